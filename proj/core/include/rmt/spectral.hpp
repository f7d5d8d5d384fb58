#pragma once

#include <cstdint>
#include <vector>

#include "rmt/ensembles.hpp"

namespace rmt {

// Eigenvalues of the Gram matrix X*X, sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;
    int n = 0;
    int p = 0;
    std::uint64_t seed = 0;
};

// All p eigenvalues of X*X, computed as squared singular values of X
// (Householder bidiagonalization + implicit-shift QR on the bidiagonal).
// Throws on non-finite input or if the QR sweep cap (30*p) is exceeded.
Spectrum gram_eigenvalues(const MatrixSample& X);

// Same entry point for a raw column-major real matrix (test/oracle use).
Spectrum gram_eigenvalues_real(const std::vector<double>& a, int n, int p);
Spectrum gram_eigenvalues_complex(const std::vector<double>& re,
                                  const std::vector<double>& im, int n, int p);

std::vector<double> top_k(const Spectrum& s, int k);

// sum_i lambda_i^m with compensated summation; throws on overflow.
double trace_power(const Spectrum& s, int m);

// Right-continuous step function x -> #{lambda_i / normalizer <= x} / p.
class EmpiricalSpectralDistribution {
  public:
    EmpiricalSpectralDistribution(const Spectrum& s, double normalizer);
    double operator()(double x) const;
    // normalized eigenvalues, ascending
    const std::vector<double>& points() const { return points_; }

  private:
    std::vector<double> points_;
};

}  // namespace rmt
