#include "rmt/tracy_widom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>

#include "rmt/quadrature.hpp"

namespace rmt {

AiryValue airy(double x) {
    if (std::abs(x) > 40.0)
        throw std::domain_error("airy: |x| <= 40 supported");
    return {x, boost::math::airy_ai(x), boost::math::airy_ai_prime(x)};
}

// d/dx [Ai'^2 - x Ai^2] = -Ai^2
double airy_sq_tail(double x) {
    AiryValue v = airy(x);
    return v.ai_prime * v.ai_prime - x * v.ai * v.ai;
}

// d/dx [x^2 Ai^2 - x Ai'^2 + Ai Ai'] = 3 x Ai^2, so the tail integral is the
// negative of the bracket (it vanishes at +inf)
double airy_t_sq_tail(double x) {
    AiryValue v = airy(x);
    return -(x * x * v.ai * v.ai - x * v.ai_prime * v.ai_prime + v.ai * v.ai_prime) / 3.0;
}

double airy_tail(double x) {
    // Ai decays like exp(-(2/3)t^{3/2}); the integrand is below 1e-18 past
    // max(x, 14), so a finite panel integral suffices.
    double hi = std::max(x + 1.0, 14.0);
    return integrate_panels([](double t) { return airy(t).ai; }, x, hi,
                            std::max(8, static_cast<int>((hi - x) / 2)));
}

namespace {

using State = std::array<double, 2>;  // q, q'

struct PainleveSystem {
    void operator()(const State& y, State& dydx, double x) const {
        dydx[0] = y[1];
        dydx[1] = x * y[0] + 2.0 * y[0] * y[0] * y[0];
    }
};

// left asymptotic q(x) = sqrt(-x/2) (1 + x^{-3}/8 - 73 x^{-6}/128 + ...)
double hm_left_asymptotic(double x) {
    const double x3 = 1.0 / (x * x * x);
    return std::sqrt(-x / 2.0) *
           (1.0 + 0.125 * x3 - (73.0 / 128.0) * x3 * x3 +
            (10657.0 / 1024.0) * x3 * x3 * x3);
}

// Uniform-mesh solution of q'' = xq + 2q^3 on [x_left, x0], with the exact
// right boundary q(x0) = Ai(x0) and the far-left asymptotic as the left
// boundary. Backward one-sided integration alone loses the solution below
// x ~ -6: perturbations grow like exp((2 sqrt(2)/3)|x|^{3/2}), so the
// shooting error is amplified beyond recovery in double precision. The
// Numerov/Newton pass pins both ends instead.
struct HMDenseSolution {
    double x_left = 0.0, h = 0.0;
    std::vector<double> q;   // mesh values, ascending x
    std::vector<double> qp;  // O(h^4) derivative estimates
};

double hm_rhs(double x, double q) { return x * q + 2.0 * q * q * q; }
double hm_rhs_dq(double x, double q) { return x + 6.0 * q * q; }

HMDenseSolution solve_hm_bvp(double x0) {
    namespace ode = boost::numeric::odeint;
    HMDenseSolution sol;
    sol.x_left = -12.0;  // asymptotic error ~1e-11 there; buffers the grid
    const double span = x0 - sol.x_left;
    const std::size_t n = static_cast<std::size_t>(std::ceil(span / 0.002));
    sol.h = span / static_cast<double>(n);
    sol.q.assign(n + 1, 0.0);

    // initial guess: one-sided integration where it is reliable (x >= -3),
    // far-left asymptotic elsewhere
    AiryValue a0 = airy(x0);
    State y = {a0.ai, a0.ai_prime};
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(1e-13, 1e-12);
    PainleveSystem sys;
    double x = x0;
    sol.q[n] = a0.ai;
    for (std::size_t i = n; i-- > 0;) {
        double xi = sol.x_left + sol.h * static_cast<double>(i);
        if (xi >= -3.0) {
            ode::integrate_adaptive(stepper, sys, y, x, xi, -1e-3);
            x = xi;
            sol.q[i] = y[0];
        } else {
            sol.q[i] = hm_left_asymptotic(xi);
        }
    }
    sol.q[0] = hm_left_asymptotic(sol.x_left);

    // Newton iteration on the Numerov discretization (O(h^4)):
    // q_{i+1} - 2 q_i + q_{i-1} = (h^2/12)(f_{i+1} + 10 f_i + f_{i-1})
    const double h2_12 = sol.h * sol.h / 12.0;
    std::vector<double> dl(n - 1), dd(n - 1), du(n - 1), rhs(n - 1);
    bool converged = false;
    for (int iter = 0; iter < 60; ++iter) {
        for (std::size_t i = 1; i < n; ++i) {
            double xm = sol.x_left + sol.h * static_cast<double>(i - 1);
            double xi = xm + sol.h;
            double xp = xi + sol.h;
            double res = sol.q[i + 1] - 2.0 * sol.q[i] + sol.q[i - 1] -
                         h2_12 * (hm_rhs(xp, sol.q[i + 1]) +
                                  10.0 * hm_rhs(xi, sol.q[i]) +
                                  hm_rhs(xm, sol.q[i - 1]));
            rhs[i - 1] = -res;
            dl[i - 1] = 1.0 - h2_12 * hm_rhs_dq(xm, sol.q[i - 1]);
            dd[i - 1] = -2.0 - 10.0 * h2_12 * hm_rhs_dq(xi, sol.q[i]);
            du[i - 1] = 1.0 - h2_12 * hm_rhs_dq(xp, sol.q[i + 1]);
        }
        // Thomas solve (boundary values fixed, so first/last off-diagonals drop)
        for (std::size_t i = 1; i < n - 1; ++i) {
            double w = dl[i] / dd[i - 1];
            dd[i] -= w * du[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        std::vector<double> delta(n - 1);
        delta[n - 2] = rhs[n - 2] / dd[n - 2];
        for (std::size_t i = n - 1; i-- > 1;)
            delta[i - 1] = (rhs[i - 1] - du[i - 1] * delta[i]) / dd[i - 1];
        double worst = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            sol.q[i] += delta[i - 1];
            worst = std::max(worst, std::abs(delta[i - 1]));
        }
        if (worst < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("hastings_mcleod: boundary-value iteration stalled");

    // O(h^4) derivatives for interpolation and quadrature correction
    sol.qp.assign(n + 1, 0.0);
    auto d4 = [&](std::size_t i) {
        return (-sol.q[i + 2] + 8.0 * sol.q[i + 1] - 8.0 * sol.q[i - 1] +
                sol.q[i - 2]) /
               (12.0 * sol.h);
    };
    for (std::size_t i = 2; i + 2 <= n; ++i) sol.qp[i] = d4(i);
    // one-sided O(h^4) at the edges
    auto edge = [&](std::size_t i, int dir) {
        const double s = static_cast<double>(dir);
        return s *
               (-25.0 * sol.q[i] + 48.0 * sol.q[i + dir] - 36.0 * sol.q[i + 2 * dir] +
                16.0 * sol.q[i + 3 * dir] - 3.0 * sol.q[i + 4 * dir]) /
               (12.0 * sol.h);
    };
    sol.qp[0] = edge(0, 1);
    sol.qp[1] = edge(1, 1);
    sol.qp[n] = edge(n, -1);
    sol.qp[n - 1] = edge(n - 1, -1);
    return sol;
}

struct HMColumns {
    std::vector<double> q, P, Q, R;
};

// cubic Hermite on a mesh cell
double hermite_cell(double t, double h, double f0, double f1, double d0, double d1) {
    double u = t / h, u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * h * d1;
}

// corrected trapezoid: int_a^{a+w} g = w/2 (g0+g1) + w^2/12 (g0' - g1') + O(w^5)
double ctrap(double w, double g0, double g1, double gp0, double gp1) {
    return 0.5 * w * (g0 + g1) + w * w / 12.0 * (gp0 - gp1);
}

HMColumns integrate_hastings_mcleod(const std::vector<double>& grid, double x0) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("hastings_mcleod: grid must be ascending");
    if (!grid.empty() && (grid.front() < -10.0 || grid.back() > 10.0))
        throw std::domain_error("hastings_mcleod: grid must lie in [-10, 10]");
    if (x0 <= -10.0 || x0 > 40.0)
        throw std::domain_error("hastings_mcleod: x0 must lie in (-10, 40]");

    HMColumns cols;
    const std::size_t m = grid.size();
    cols.q.assign(m, 0.0);
    cols.P.assign(m, 0.0);
    cols.Q.assign(m, 0.0);
    cols.R.assign(m, 0.0);

    bool need_mesh = false;
    for (double s : grid) need_mesh |= (s < x0);
    HMDenseSolution sol;
    std::vector<double> cum_p, cum_q, cum_r;  // int_{x_i}^{x0} of q^2, t q^2, q
    if (need_mesh) {
        sol = solve_hm_bvp(x0);
        const std::size_t n = sol.q.size() - 1;
        cum_p.assign(n + 1, 0.0);
        cum_q.assign(n + 1, 0.0);
        cum_r.assign(n + 1, 0.0);
        for (std::size_t i = n; i-- > 0;) {
            double xi = sol.x_left + sol.h * static_cast<double>(i);
            double xp = xi + sol.h;
            double q0 = sol.q[i], q1 = sol.q[i + 1];
            double d0 = sol.qp[i], d1 = sol.qp[i + 1];
            cum_p[i] = cum_p[i + 1] +
                       ctrap(sol.h, q0 * q0, q1 * q1, 2 * q0 * d0, 2 * q1 * d1);
            cum_q[i] = cum_q[i + 1] + ctrap(sol.h, xi * q0 * q0, xp * q1 * q1,
                                            q0 * q0 + 2 * xi * q0 * d0,
                                            q1 * q1 + 2 * xp * q1 * d1);
            cum_r[i] = cum_r[i + 1] + ctrap(sol.h, q0, q1, d0, d1);
        }
    }

    for (std::size_t idx = 0; idx < m; ++idx) {
        const double s = grid[idx];
        if (s >= x0) {
            cols.q[idx] = airy(s).ai;
            // integrals from s down to x0 are negative tail differences
            cols.P[idx] = airy_sq_tail(s) - airy_sq_tail(x0);
            cols.Q[idx] = airy_t_sq_tail(s) - airy_t_sq_tail(x0);
            cols.R[idx] = airy_tail(s) - airy_tail(x0);
            continue;
        }
        const std::size_t n = sol.q.size() - 1;
        double pos = (s - sol.x_left) / sol.h;
        std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
        double t = s - (sol.x_left + sol.h * static_cast<double>(i));
        double q0 = sol.q[i], q1 = sol.q[i + 1];
        double d0 = sol.qp[i], d1 = sol.qp[i + 1];
        double qs = hermite_cell(t, sol.h, q0, q1, d0, d1);
        // derivative of the interpolant (consistent to O(h^3))
        double u = t / sol.h;
        double dqs = ((6 * u * u - 6 * u) * q0 + (3 * u * u - 4 * u + 1) * sol.h * d0 +
                      (-6 * u * u + 6 * u) * q1 + (3 * u * u - 2 * u) * sol.h * d1) /
                     sol.h;
        double xi = sol.x_left + sol.h * static_cast<double>(i);
        cols.q[idx] = qs;
        cols.P[idx] = cum_p[i] - ctrap(t, q0 * q0, qs * qs, 2 * q0 * d0, 2 * qs * dqs);
        cols.Q[idx] = cum_q[i] - ctrap(t, xi * q0 * q0, s * qs * qs,
                                       q0 * q0 + 2 * xi * q0 * d0,
                                       qs * qs + 2 * s * qs * dqs);
        cols.R[idx] = cum_r[i] - ctrap(t, q0, qs, d0, dqs);
    }
    return cols;
}

}  // namespace

std::vector<double> hastings_mcleod(const std::vector<double>& grid, double x0) {
    return integrate_hastings_mcleod(grid, x0).q;
}

TWTable tw_table(const std::vector<double>& grid, double x0) {
    HMColumns cols = integrate_hastings_mcleod(grid, x0);
    const double t0 = airy_sq_tail(x0);    // int_{x0}^inf Ai^2
    const double t1 = airy_t_sq_tail(x0);  // int_{x0}^inf t Ai^2
    const double tj = airy_tail(x0);       // int_{x0}^inf Ai

    TWTable t;
    t.grid = grid;
    t.q = cols.q;
    const std::size_t m = grid.size();
    t.I.resize(m);
    t.J.resize(m);
    t.q2int.resize(m);
    t.f1.resize(m);
    t.f2.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = grid[i];
        const double p_full = cols.P[i] + t0;  // int_s^inf q^2
        const double q_full = cols.Q[i] + t1;  // int_s^inf t q^2
        t.q2int[i] = p_full;
        t.I[i] = q_full - s * p_full;
        t.J[i] = cols.R[i] + tj;
        t.f2[i] = std::exp(-t.I[i]);
        t.f1[i] = std::exp(-0.5 * (t.J[i] + t.I[i]));
    }
    return t;
}

const TWTable& default_tw_table() {
    static const TWTable table = [] {
        std::vector<double> grid;
        for (int i = 0; i <= 800; ++i) grid.push_back(-10.0 + 0.02 * i);
        return tw_table(grid);
    }();
    return table;
}

namespace {

const std::vector<double>& cdf_column(const TWTable& t, int beta) {
    if (beta == 1) return t.f1;
    if (beta == 2) return t.f2;
    throw std::invalid_argument("beta must be 1 or 2");
}

// dF/ds at grid index i (analytic, from the stored integrals)
double cdf_derivative(const TWTable& t, int beta, std::size_t i) {
    if (beta == 2) return t.f2[i] * t.q2int[i];
    return t.f1[i] * 0.5 * (t.q[i] + t.q2int[i]);
}

// cubic Hermite on the bracketing cell
double hermite_eval(double s, double x0, double x1, double f0, double f1,
                    double d0, double d1) {
    double h = x1 - x0;
    double u = (s - x0) / h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * h * d1;
}

}  // namespace

double tw_cdf(const TWTable& t, double s, int beta) {
    const auto& f = cdf_column(t, beta);
    if (t.grid.size() < 2) throw std::invalid_argument("table too small");
    if (s <= t.grid.front()) return f.front();
    if (s >= t.grid.back()) return f.back();
    auto it = std::upper_bound(t.grid.begin(), t.grid.end(), s);
    std::size_t i = static_cast<std::size_t>(it - t.grid.begin()) - 1;
    return hermite_eval(s, t.grid[i], t.grid[i + 1], f[i], f[i + 1],
                        cdf_derivative(t, beta, i), cdf_derivative(t, beta, i + 1));
}

double tw_quantile(const TWTable& t, double prob, int beta) {
    const auto& f = cdf_column(t, beta);
    if (!(prob > 0.0 && prob < 1.0))
        throw std::domain_error("tw_quantile: prob must be in (0,1)");
    if (prob < f.front() || prob > f.back())
        throw std::domain_error("tw_quantile: prob outside tabulated range");
    // bisection on the Hermite-interpolated CDF (strictly increasing)
    double lo = t.grid.front(), hi = t.grid.back();
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (tw_cdf(t, mid, beta) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rmt
