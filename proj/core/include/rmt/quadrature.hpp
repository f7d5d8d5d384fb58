#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rmt {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' via the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

inline const QuadratureRule& gauss_legendre_64() {
    static const QuadratureRule rule = gauss_legendre(64);
    return rule;
}

template <typename F>
double integrate_gl(F&& f, double a, double b, const QuadratureRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * acc;
}

// Composite 64-point Gauss-Legendre over uniform panels.
template <typename F>
double integrate_panels(F&& f, double a, double b, int panels = 8) {
    const auto& rule = gauss_legendre_64();
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        double x0 = a + (b - a) * k / panels;
        double x1 = a + (b - a) * (k + 1) / panels;
        acc += integrate_gl(f, x0, x1, rule);
    }
    return acc;
}

// Panel-doubling until two successive refinements agree to tol.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-10) {
    double prev = integrate_panels(f, a, b, 1);
    for (int panels = 2; panels <= 256; panels *= 2) {
        double cur = integrate_panels(f, a, b, panels);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace rmt
