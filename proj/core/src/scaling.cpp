#include "rmt/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "rmt/quadrature.hpp"

namespace rmt {

ScalingConstants scaling_constants(int n, int p, bool johnstone_centering) {
    if (n < 1 || p < 1) throw std::invalid_argument("scaling_constants: n, p >= 1");
    ScalingConstants c;
    const double ne = johnstone_centering ? n - 1.0 : static_cast<double>(n);
    const double pe = p;
    const double sn = std::sqrt(ne), sp = std::sqrt(pe);
    c.mu = (sn + sp) * (sn + sp);
    c.sigma = (sn + sp) * std::cbrt(1.0 / sn + 1.0 / sp);
    c.gamma = static_cast<double>(n) / p;
    const double gi = 1.0 / std::sqrt(c.gamma);
    c.a = (1.0 - gi) * (1.0 - gi);
    c.b = (1.0 + gi) * (1.0 + gi);
    return c;
}

double rescale(double lambda, const ScalingConstants& c) {
    return (lambda - c.mu) / c.sigma;
}

double unrescale(double s, const ScalingConstants& c) {
    return c.mu + c.sigma * s;
}

double mp_density(double x, double gamma) {
    const double gi = 1.0 / std::sqrt(gamma);
    const double a = (1.0 - gi) * (1.0 - gi);
    const double b = (1.0 + gi) * (1.0 + gi);
    if (x <= a || x >= b) return 0.0;
    return gamma / (2.0 * 3.14159265358979323846 * x) * std::sqrt((b - x) * (x - a));
}

double mp_cdf(double x, double gamma) {
    const double gi = 1.0 / std::sqrt(gamma);
    const double a = (1.0 - gi) * (1.0 - gi);
    const double b = (1.0 + gi) * (1.0 + gi);
    const double atom = gamma < 1.0 ? 1.0 - gamma : 0.0;
    if (x < 0.0) return 0.0;
    if (x <= a) return atom;
    if (x >= b) return 1.0;
    // substitution x = a + (b-a) sin^2(theta) removes the edge square roots
    // (and the 1/x singularity when a = 0)
    const double pi = 3.14159265358979323846;
    const double theta_x = std::asin(std::sqrt((x - a) / (b - a)));
    auto integrand = [&](double th) {
        double s = std::sin(th), c = std::cos(th);
        double xx = a + (b - a) * s * s;
        double sqrt_term = (b - a) * s * c;  // sqrt((b-x)(x-a))
        return gamma / (2.0 * pi * xx) * sqrt_term * 2.0 * (b - a) * s * c;
    };
    double mass = integrate_panels(integrand, 0.0, theta_x, 4);
    return atom + mass;
}

double mp_distance(const EmpiricalSpectralDistribution& esd, double gamma) {
    const auto& pts = esd.points();
    const std::size_t m = pts.size();
    double sup = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double f = mp_cdf(pts[i], gamma);
        double below = static_cast<double>(i) / m;
        double above = static_cast<double>(i + 1) / m;
        sup = std::max({sup, std::abs(f - below), std::abs(f - above)});
    }
    // atom at 0 and the upper support edge
    const double gi = 1.0 / std::sqrt(gamma);
    const double b = (1.0 + gi) * (1.0 + gi);
    for (double x : {0.0, b}) {
        double f = mp_cdf(x, gamma);
        sup = std::max(sup, std::abs(f - esd(x)));
    }
    return sup;
}

}  // namespace rmt
