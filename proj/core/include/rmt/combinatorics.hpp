#pragma once

#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rmt/ensembles.hpp"

namespace rmt {

// g_m(y) (or g'_m(y)): coeffs[j] counts Dyck paths of length 2m with j
// up-steps at even (odd) times.
struct DyckPolynomial {
    int m = 0;
    std::vector<mpz_class> coeffs;

    mpz_class at_one() const;
    double eval(double y) const;
};

// exact polynomials for m = 0..m_max by DP over (time, height, count)
std::vector<DyckPolynomial> dyck_polynomials(int m_max);
std::vector<DyckPolynomial> gprime_polynomials(int m_max);

struct FunctionalEquationReport {
    bool pass = true;
    int failing_m = -1;       // first failing m, if any
    int failing_degree = -1;  // first failing y-degree
    bool failing_primed = false;
};

// Checks, coefficient-exactly, g_m = y sum_{a+b=m-1} g'_a g_b and
// g'_m = sum_{a+b=m-1} g'_a g_b for all 1 <= m <= m_max.
FunctionalEquationReport verify_functional_equation(int m_max);
FunctionalEquationReport verify_functional_equation(
    const std::vector<DyckPolynomial>& g, const std::vector<DyckPolynomial>& gp);

// leading-order form of g_m(y); the exponential base is (sqrt(y)+1)^{2m}
// (= z1^{-m}), which the y = 1 Catalan growth 4^m fixes
double gm_asymptotic(int m, double y);

// (sqrt(gamma)+1) gamma^{1/4} / (2 sqrt(pi))
double trace_growth_constant(double gamma);

// Exact trace-moment computation by closed-path enumeration.
struct PathSumSpec {
    int n = 1;
    int p = 1;
    int m = 1;
    std::map<int, mpq_class> moments;  // exponent -> E x^k (odd entries 0)
};

std::map<int, mpq_class> moments_from_family(const EntryDistribution& dist, int k_max);

// E Trace (X^t X)^m over closed paths alternating between the n-side and
// p-side index sets; each distinct entry's multiplicity must be even.
mpq_class expected_trace_exact(const PathSumSpec& spec);

// E Trace M^{2m} for the n x n symmetric Wigner matrix with the same entry law
mpq_class wigner_trace_exact(int n, int m, const std::map<int, mpq_class>& moments);

struct DominationResult {
    mpq_class lhs;  // E Tr A^m
    mpq_class rhs;  // E Tr M^{2m}
    bool pass = false;
};

DominationResult wigner_domination_check(const PathSumSpec& spec);

}  // namespace rmt
