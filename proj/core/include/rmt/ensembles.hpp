#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rmt/rng.hpp"

namespace rmt {

enum class Family {
    GaussianReal,
    GaussianComplex,
    Rademacher,
    SymmetricUniform,
    ScaledSymmetricDiscrete,
};

enum class FieldKind { Real, Complex };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Entry law of the matrix elements. Built-in factories produce laws that
// are centered, unit-variance and symmetric; the raw discrete() factory
// accepts anything with positive weights summing to 1, so that
// validate_conditions can be exercised on broken laws too.
struct EntryDistribution {
    Family family = Family::GaussianReal;
    std::vector<double> values;   // discrete support (discrete families only)
    std::vector<double> weights;  // matching probabilities
    // GaussianComplex only: Re,Im ~ N(0,1) so E|x|^2 = 2 (the classical
    // Wishart normalization) instead of the default E|x|^2 = 1.
    bool wishart_convention = false;

    static EntryDistribution gaussian_real();
    static EntryDistribution gaussian_complex(bool wishart_convention = false);
    static EntryDistribution rademacher();
    static EntryDistribution symmetric_uniform();  // uniform on [-sqrt(3), sqrt(3)]
    static EntryDistribution discrete(std::vector<double> values,
                                      std::vector<double> weights);

    bool is_complex() const { return family == Family::GaussianComplex; }
};

struct EnsembleSpec {
    EntryDistribution entry;
    int n = 1;  // rows
    int p = 1;  // columns
    FieldKind field = FieldKind::Real;

    EnsembleSpec() = default;
    EnsembleSpec(EntryDistribution e, int n_, int p_, FieldKind f);
};

// Column-major n x p sample. im is empty for real samples.
struct MatrixSample {
    EnsembleSpec spec;
    std::uint64_t seed = 0;
    std::vector<double> re;
    std::vector<double> im;

    int n() const { return spec.n; }
    int p() const { return spec.p; }
    bool is_complex() const { return !im.empty(); }
    double& at(int i, int j) { return re[static_cast<std::size_t>(j) * spec.n + i]; }
    double at(int i, int j) const { return re[static_cast<std::size_t>(j) * spec.n + i]; }
};

MatrixSample sample_matrix(const EnsembleSpec& spec, std::uint64_t seed);

// E x^k in closed form (real-valued families). Odd k gives exactly 0.
double entry_moment(const EntryDistribution& dist, int k);

// Same moment as an exact rational. Supported for GaussianReal (double
// factorial), Rademacher and SymmetricUniform (3^m / (2m+1)).
mpq_class entry_moment_exact(const EntryDistribution& dist, int k);

struct ConditionRow {
    int m = 0;
    double even_moment = 0.0;    // E x^{2m}
    double minimal_c = 0.0;      // min C with E x^{2m'} <= (C m')^{m'} for all m' <= m
};

struct ConditionReport {
    std::vector<ConditionRow> rows;
    bool symmetric = false;
    bool normalized = false;  // mean 0 and variance 1
    bool pass() const { return symmetric && normalized; }
};

ConditionReport validate_conditions(const EntryDistribution& dist, int m_max);

}  // namespace rmt
