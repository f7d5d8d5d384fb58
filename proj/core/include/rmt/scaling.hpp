#pragma once

#include "rmt/spectral.hpp"

namespace rmt {

// Edge centering/scaling for lambda_max(A_p) and the MP support for A_p/n.
struct ScalingConstants {
    double mu = 0.0;     // (sqrt(n) + sqrt(p))^2
    double sigma = 0.0;  // (sqrt(n) + sqrt(p)) (n^{-1/2} + p^{-1/2})^{1/3}
    double gamma = 1.0;  // n / p
    double a = 0.0;      // (1 - gamma^{-1/2})^2
    double b = 4.0;      // (1 + gamma^{-1/2})^2
};

// johnstone_centering replaces n by n-1 in mu and sigma (sharper finite-p
// agreement for real Gaussian ensembles; the limit is unchanged).
ScalingConstants scaling_constants(int n, int p, bool johnstone_centering = false);

double rescale(double lambda, const ScalingConstants& c);
double unrescale(double s, const ScalingConstants& c);

// Marchenko-Pastur density of A_p/n at ratio gamma = n/p >= 1; zero
// outside [a, b].
double mp_density(double x, double gamma);

// CDF of the MP law (numeric integral of the density, plus the atom of
// mass 1 - gamma at 0 when gamma < 1). Cached per gamma.
double mp_cdf(double x, double gamma);

// sup-norm distance between an empirical spectral distribution and the MP CDF
double mp_distance(const EmpiricalSpectralDistribution& esd, double gamma);

}  // namespace rmt
