#include "rmt/airy_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rmt/quadrature.hpp"
#include "rmt/scaling.hpp"
#include "rmt/tracy_widom.hpp"

namespace rmt {

double airy_kernel(double s1, double s2) {
    AiryValue a = airy(s1);
    if (std::abs(s1 - s2) < 1e-6) {
        // diagonal limit at the midpoint
        double s = 0.5 * (s1 + s2);
        AiryValue v = airy(s);
        return v.ai_prime * v.ai_prime - s * v.ai * v.ai;
    }
    AiryValue b = airy(s2);
    return (a.ai * b.ai_prime - a.ai_prime * b.ai) / (s1 - s2);
}

namespace {

// phi_j(x) for j = 0..p-1 as log|phi| and sign
struct LaguerreColumn {
    std::vector<double> log_abs;
    std::vector<double> sign;
};

LaguerreColumn laguerre_functions(int p, int alpha, double x) {
    if (p < 1 || alpha < 0 || !(x > 0.0))
        throw std::invalid_argument("laguerre_functions: need p >= 1, alpha >= 0, x > 0");
    LaguerreColumn col;
    col.log_abs.assign(p, -std::numeric_limits<double>::infinity());
    col.sign.assign(p, 0.0);

    // phi_0 = x^{alpha/2} e^{-x/2} / sqrt(alpha!)
    double log_scale = -0.5 * x + 0.5 * alpha * std::log(x) - 0.5 * std::lgamma(alpha + 1.0);
    if (!std::isfinite(log_scale))
        throw std::overflow_error("laguerre_kernel: normalization overflow");
    double fprev = 0.0;  // phi_{-1} mantissa
    double fcur = 1.0;   // phi_0 mantissa
    col.log_abs[0] = log_scale;
    col.sign[0] = 1.0;

    for (int j = 0; j + 1 < p; ++j) {
        double a1 = (2.0 * j + 1.0 + alpha - x) /
                    std::sqrt((j + 1.0) * (j + 1.0 + alpha));
        double a0 = std::sqrt(j * (j + static_cast<double>(alpha))) /
                    std::sqrt((j + 1.0) * (j + 1.0 + alpha));
        double fnext = a1 * fcur - a0 * fprev;
        fprev = fcur;
        fcur = fnext;
        double mag = std::abs(fcur);
        if (mag > 1e100) {
            fcur *= 1e-100;
            fprev *= 1e-100;
            log_scale += 230.25850929940456840;  // ln(1e100)
        } else if (mag > 0.0 && mag < 1e-100) {
            fcur *= 1e100;
            fprev *= 1e100;
            log_scale -= 230.25850929940456840;
        }
        if (fcur != 0.0) {
            col.log_abs[j + 1] = log_scale + std::log(std::abs(fcur));
            col.sign[j + 1] = fcur > 0.0 ? 1.0 : -1.0;
        }
    }
    return col;
}

}  // namespace

double laguerre_kernel(int p, int alpha, double x, double y) {
    LaguerreColumn cx = laguerre_functions(p, alpha, x);
    LaguerreColumn cy = (x == y) ? cx : laguerre_functions(p, alpha, y);
    double acc = 0.0;
    for (int j = 0; j < p; ++j) {
        double lg = cx.log_abs[j] + cy.log_abs[j];
        if (lg > -745.0)  // below this exp underflows anyway
            acc += cx.sign[j] * cy.sign[j] * std::exp(lg);
    }
    return acc;
}

KernelConvergence rescaled_kernel_convergence(int p, int alpha, double s1, double s2) {
    ScalingConstants c = scaling_constants(p + alpha, p);
    KernelConvergence out;
    out.finite_p = c.sigma * laguerre_kernel(p, alpha, c.mu + c.sigma * s1,
                                             c.mu + c.sigma * s2);
    out.airy = airy_kernel(s1, s2);
    out.difference = out.finite_p - out.airy;
    return out;
}

KernelDiscretization discretize_airy_kernel(double s, int m_nodes, double length) {
    KernelDiscretization k;
    k.s_min = s;
    k.m = m_nodes;
    QuadratureRule rule = gauss_legendre(m_nodes);
    k.nodes.resize(m_nodes);
    k.weights.resize(m_nodes);
    const double half = 0.5 * length;
    for (int i = 0; i < m_nodes; ++i) {
        k.nodes[i] = s + half * (rule.nodes[i] + 1.0);
        k.weights[i] = half * rule.weights[i];
    }
    k.matrix.assign(static_cast<std::size_t>(m_nodes) * m_nodes, 0.0);
    for (int i = 0; i < m_nodes; ++i) {
        for (int j = i; j < m_nodes; ++j) {
            double v = std::sqrt(k.weights[i] * k.weights[j]) *
                       airy_kernel(k.nodes[i], k.nodes[j]);
            k.matrix[static_cast<std::size_t>(i) * m_nodes + j] = v;
            k.matrix[static_cast<std::size_t>(j) * m_nodes + i] = v;
        }
    }
    return k;
}

namespace {

// determinant by LU with partial pivoting (in place)
double determinant(std::vector<double> a, int n) {
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[static_cast<std::size_t>(r) * n + c]) >
                std::abs(a[static_cast<std::size_t>(piv) * n + c]))
                piv = r;
        if (piv != c) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(piv) * n + j],
                          a[static_cast<std::size_t>(c) * n + j]);
            det = -det;
        }
        double d = a[static_cast<std::size_t>(c) * n + c];
        det *= d;
        if (d == 0.0) return 0.0;
        for (int r = c + 1; r < n; ++r) {
            double f = a[static_cast<std::size_t>(r) * n + c] / d;
            if (f == 0.0) continue;
            for (int j = c; j < n; ++j)
                a[static_cast<std::size_t>(r) * n + j] -=
                    f * a[static_cast<std::size_t>(c) * n + j];
        }
    }
    return det;
}

double gap_from_discretization(const KernelDiscretization& k, double z) {
    std::vector<double> a(k.matrix.size());
    const int m = k.m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * m + j;
            a[idx] = (i == j ? 1.0 : 0.0) + (z - 1.0) * k.matrix[idx];
        }
    return determinant(std::move(a), m);
}

void check_gap_args(double s, int m_nodes) {
    if (s < -8.0) throw std::domain_error("fredholm_gap: s >= -8 required");
    if (m_nodes < 20) throw std::invalid_argument("fredholm_gap: m_nodes >= 20");
}

}  // namespace

std::vector<double> kernel_spectrum(const KernelDiscretization& k) {
    // cyclic Jacobi sweeps
    const int n = k.m;
    std::vector<double> a = k.matrix;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-24) break;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double apq = at(i, j);
                if (std::abs(apq) < 1e-300) continue;
                double theta = 0.5 * (at(j, j) - at(i, i)) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int r = 0; r < n; ++r) {
                    double ari = at(r, i), arj = at(r, j);
                    at(r, i) = c * ari - s * arj;
                    at(r, j) = s * ari + c * arj;
                }
                for (int r = 0; r < n; ++r) {
                    double air = at(i, r), ajr = at(j, r);
                    at(i, r) = c * air - s * ajr;
                    at(j, r) = s * air + c * ajr;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

double fredholm_gap(double s, int m_nodes) {
    check_gap_args(s, m_nodes);
    double coarse = gap_from_discretization(discretize_airy_kernel(s, m_nodes), 0.0);
    double fine = gap_from_discretization(discretize_airy_kernel(s, 2 * m_nodes), 0.0);
    if (std::abs(fine - coarse) > 1e-8)
        throw std::runtime_error("fredholm_gap: determinant not converged at s=" +
                                 std::to_string(s));
    return fine;
}

namespace {

// Occupancy-number polynomial: det(I + (z-1)K) = prod_i (1 - l_i + l_i z)
// over the eigenvalues of the discretized kernel. The coefficient of z^j is
// P(# points in (s, inf) = j). Expanding the generating polynomial through
// the eigenvalues keeps every coefficient in [0, 1] by construction;
// sampling det(I + (z-1)K) at a few z values and interpolating instead
// aliases the high-occupancy mass into the low coefficients whenever
// P(# > k_max + 1) is not negligible.
std::vector<double> occupancy_polynomial(const KernelDiscretization& disc, int k_max) {
    std::vector<double> eig = kernel_spectrum(disc);
    std::vector<double> coeff{1.0};
    for (double l : eig) {
        if (l < 1e-16) continue;  // no effect on the polynomial
        l = std::min(l, 1.0);
        coeff.push_back(0.0);
        for (std::size_t j = coeff.size() - 1; j > 0; --j)
            coeff[j] = coeff[j] * (1.0 - l) + coeff[j - 1] * l;
        coeff[0] *= 1.0 - l;
    }
    coeff.resize(static_cast<std::size_t>(k_max) + 1, 0.0);
    return coeff;
}

}  // namespace

std::vector<double> count_distribution(double s, int k_max, int m_nodes) {
    check_gap_args(s, m_nodes);
    if (k_max < 0) throw std::invalid_argument("count_distribution: k_max >= 0");
    std::vector<double> coarse =
        occupancy_polynomial(discretize_airy_kernel(s, m_nodes), k_max);
    std::vector<double> coeff =
        occupancy_polynomial(discretize_airy_kernel(s, 2 * m_nodes), k_max);
    for (int j = 0; j <= k_max; ++j)
        if (std::abs(coeff[j] - coarse[j]) > 1e-8)
            throw std::runtime_error("count_distribution: determinant not converged");

    std::vector<double> probs(coeff.begin(), coeff.begin() + k_max + 1);
    double total = 0.0;
    for (double& pr : probs) {
        if (pr < -1e-6)
            throw std::runtime_error("count_distribution: negative probability " +
                                     std::to_string(pr));
        if (pr < 0.0) pr = 0.0;
        total += pr;
    }
    if (total > 1.0 + 1e-8)
        throw std::runtime_error("count_distribution: probabilities exceed 1");
    return probs;
}

double topk_cdf_complex(int k, double s, int m_nodes) {
    if (k < 1) throw std::invalid_argument("topk_cdf_complex: k >= 1");
    std::vector<double> probs = count_distribution(s, k - 1, m_nodes);
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += probs[j];
    return std::min(acc, 1.0);
}

TopkCdfTable::TopkCdfTable(int k, double s_min, double s_max, double step,
                           int m_nodes) {
    if (!(step > 0.0) || !(s_max > s_min))
        throw std::invalid_argument("TopkCdfTable: need s_max > s_min, step > 0");
    s_min_ = std::max(s_min, -8.0);  // kernel window starts at -8
    step_ = step;
    const int n = static_cast<int>(std::ceil((s_max - s_min_) / step)) + 1;
    values_.reserve(n);
    for (int i = 0; i < n; ++i)
        values_.push_back(topk_cdf_complex(k, s_min_ + step * i, m_nodes));
}

double TopkCdfTable::operator()(double s) const {
    if (s <= s_min_) return values_.front();
    double pos = (s - s_min_) / step_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= values_.size()) return values_.back();
    double t = pos - static_cast<double>(i);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
}

namespace {

// int_{-inf}^{s} Ai(t) dt, via the unit total integral of Ai
double airy_integral_low(double s) { return 1.0 - airy_tail(s); }

// d/ds2 of the Airy kernel, via the integral representation
double airy_kernel_d2(double s1, double s2) {
    double upper = 14.0 - std::min(s1, s2);
    return integrate_panels(
        [&](double t) { return airy(s1 + t).ai * airy(s2 + t).ai_prime; }, 0.0,
        std::max(upper, 1.0), 16);
}

double k11_entry(double s1, double s2) {
    return airy_kernel(s1, s2) + 0.5 * airy(s1).ai * airy_integral_low(s2);
}

}  // namespace

RealEdgeKernelValue real_edge_kernel(double s1, double s2) {
    if (s1 < -8.0 || s2 < -8.0)
        throw std::domain_error("real_edge_kernel: s >= -8 required");
    RealEdgeKernelValue k;
    k.k11 = k11_entry(s1, s2);
    k.k22 = k11_entry(s2, s1);
    k.k12 = -0.5 * airy(s1).ai * airy(s2).ai - airy_kernel_d2(s1, s2);

    // epsilon(s1 - s2) = sign(s1 - s2)/2
    double eps = s1 > s2 ? 0.5 : (s1 < s2 ? -0.5 : 0.0);
    double upper = 14.0 - std::min(s1, s2);
    double dbl = integrate_panels(
        [&](double u) { return airy_tail(s1 + u) * airy(s2 + u).ai; }, 0.0,
        std::max(upper, 1.0), 16);
    double mid = airy_tail(s2) - airy_tail(s1);  // int_{s2}^{s1} Ai
    k.k21 = -dbl - eps + 0.5 * mid + 0.5 * airy_tail(s1) * airy_integral_low(s2);
    return k;
}

double real_edge_density(double s) {
    RealEdgeKernelValue k = real_edge_kernel(s, s);
    double det = k.k11 * k.k22 - k.k12 * k.k21;
    if (det < -1e-6)
        throw std::runtime_error("real_edge_density: negative determinant " +
                                 std::to_string(det));
    if (det < 0.0) det = 0.0;
    return std::sqrt(det);
}

}  // namespace rmt
