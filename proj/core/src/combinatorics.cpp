#include "rmt/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmt {

mpz_class DyckPolynomial::at_one() const {
    mpz_class s = 0;
    for (const auto& c : coeffs) s += c;
    return s;
}

double DyckPolynomial::eval(double y) const {
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;)
        acc = acc * y + coeffs[j].get_d();
    return acc;
}

namespace {

// One DP pass over t = 0..2*m_max on states (height, counted up-steps);
// the height-0 layer at time 2m is g_m (parity = 0 counts even-time
// up-steps) or g'_m (parity = 1).
std::vector<DyckPolynomial> dyck_dp(int m_max, int parity) {
    if (m_max < 0 || m_max > 60)
        throw std::invalid_argument("dyck polynomials: m_max must be in [0, 60]");
    const int H = m_max + 1;
    // layer[h][j]
    std::vector<std::vector<mpz_class>> layer(H, std::vector<mpz_class>(H, 0));
    layer[0][0] = 1;

    std::vector<DyckPolynomial> out;
    out.reserve(m_max + 1);
    out.push_back({0, {mpz_class(1)}});

    for (int t = 0; t < 2 * m_max; ++t) {
        std::vector<std::vector<mpz_class>> next(H, std::vector<mpz_class>(H, 0));
        const bool counted = (t % 2) == parity;
        for (int h = 0; h < H; ++h) {
            for (int j = 0; j <= m_max; ++j) {
                const mpz_class& c = layer[h][j];
                if (c == 0) continue;
                if (h + 1 < H) {
                    int j2 = counted ? j + 1 : j;
                    if (j2 <= m_max) next[h + 1][j2] += c;
                }
                if (h > 0) next[h - 1][j] += c;
            }
        }
        layer.swap(next);
        if ((t + 1) % 2 == 0) {
            int m = (t + 1) / 2;
            DyckPolynomial poly;
            poly.m = m;
            poly.coeffs.assign(layer[0].begin(), layer[0].begin() + m + 1);
            while (poly.coeffs.size() > 1 && poly.coeffs.back() == 0)
                poly.coeffs.pop_back();
            out.push_back(std::move(poly));
        }
    }
    return out;
}

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void poly_add(std::vector<mpz_class>& acc, const std::vector<mpz_class>& a) {
    if (acc.size() < a.size()) acc.resize(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) acc[i] += a[i];
}

mpz_class coeff_at(const std::vector<mpz_class>& p, std::size_t d) {
    return d < p.size() ? p[d] : mpz_class(0);
}

}  // namespace

std::vector<DyckPolynomial> dyck_polynomials(int m_max) { return dyck_dp(m_max, 0); }

std::vector<DyckPolynomial> gprime_polynomials(int m_max) { return dyck_dp(m_max, 1); }

FunctionalEquationReport verify_functional_equation(
    const std::vector<DyckPolynomial>& g, const std::vector<DyckPolynomial>& gp) {
    FunctionalEquationReport rep;
    const std::size_t m_max = std::min(g.size(), gp.size()) - 1;
    for (std::size_t m = 1; m <= m_max; ++m) {
        std::vector<mpz_class> conv;  // sum_{a+b=m-1} g'_a g_b
        for (std::size_t a = 0; a < m; ++a)
            poly_add(conv, poly_mul(gp[a].coeffs, g[m - 1 - a].coeffs));
        // g_m = y * conv
        std::size_t deg = std::max(g[m].coeffs.size(), conv.size() + 1);
        for (std::size_t d = 0; d < deg; ++d) {
            mpz_class expect = d == 0 ? mpz_class(0) : coeff_at(conv, d - 1);
            if (coeff_at(g[m].coeffs, d) != expect) {
                rep.pass = false;
                rep.failing_m = static_cast<int>(m);
                rep.failing_degree = static_cast<int>(d);
                rep.failing_primed = false;
                return rep;
            }
        }
        // g'_m = conv
        deg = std::max(gp[m].coeffs.size(), conv.size());
        for (std::size_t d = 0; d < deg; ++d) {
            if (coeff_at(gp[m].coeffs, d) != coeff_at(conv, d)) {
                rep.pass = false;
                rep.failing_m = static_cast<int>(m);
                rep.failing_degree = static_cast<int>(d);
                rep.failing_primed = true;
                return rep;
            }
        }
    }
    return rep;
}

FunctionalEquationReport verify_functional_equation(int m_max) {
    return verify_functional_equation(dyck_polynomials(m_max), gprime_polynomials(m_max));
}

double gm_asymptotic(int m, double y) {
    if (m < 1 || !(y > 0.0))
        throw std::invalid_argument("gm_asymptotic: need m >= 1, y > 0");
    double r = std::sqrt(y);
    double base = r + 1.0;
    return std::pow(y, 0.25) * base / (2.0 * std::sqrt(M_PI)) *
           std::pow(base, 2.0 * m) / std::pow(static_cast<double>(m), 1.5);
}

double trace_growth_constant(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("trace_growth_constant: gamma > 0");
    return (std::sqrt(gamma) + 1.0) * std::pow(gamma, 0.25) /
           (2.0 * std::sqrt(M_PI));
}

std::map<int, mpq_class> moments_from_family(const EntryDistribution& dist, int k_max) {
    std::map<int, mpq_class> mom;
    for (int k = 1; k <= k_max; ++k)
        mom[k] = (k % 2 == 1) ? mpq_class(0) : entry_moment_exact(dist, k);
    return mom;
}

namespace {

struct PathState {
    int n, p, steps;  // steps = total path length
    const std::map<int, mpq_class>* moments;
    std::map<std::pair<int, int>, int> mult;  // (n-side, p-side) vertex pair
    int odd_edges = 0;
    mpq_class total = 0;
};

mpq_class leaf_value(const PathState& st) {
    mpq_class prod = 1;
    for (const auto& [key, cnt] : st.mult) {
        auto it = st.moments->find(cnt);
        if (it == st.moments->end())
            throw std::invalid_argument("expected_trace_exact: missing moment of order " +
                                        std::to_string(cnt));
        prod *= it->second;
        if (prod == 0) return prod;
    }
    return prod;
}

void touch_edge(PathState& st, std::pair<int, int> key, int dir) {
    int& c = st.mult[key];
    st.odd_edges += (c % 2 == 0) ? 1 : -1;  // any touch flips this edge's parity
    c += dir;
    if (c == 0) st.mult.erase(key);
}

// Walk vertices v_0 (n-side), v_1 (p-side), ..., closing back to v_0.
// Odd-multiplicity edges cannot exceed the remaining step budget.
void walk(PathState& st, int t, int v0, int prev) {
    if (t == st.steps) {
        if (st.odd_edges == 0) st.total += leaf_value(st);
        return;
    }
    const bool to_p_side = (t % 2) == 0;  // current vertex is n-side
    const int fan = to_p_side ? st.p : st.n;
    const int remaining = st.steps - t;
    for (int w = 0; w < fan; ++w) {
        if (remaining == 1 && w != v0) continue;  // last step must close
        auto key = to_p_side ? std::make_pair(prev, w) : std::make_pair(w, prev);
        touch_edge(st, key, +1);
        if (st.odd_edges <= remaining - 1) walk(st, t + 1, v0, w);
        touch_edge(st, key, -1);
    }
}

}  // namespace

mpq_class expected_trace_exact(const PathSumSpec& spec) {
    if (spec.m < 1 || 2 * spec.m > 10)
        throw std::invalid_argument("expected_trace_exact: 2m <= 10 required");
    if (spec.n < 1 || spec.p < 1 || spec.n * spec.p > 20)
        throw std::invalid_argument("expected_trace_exact: n*p <= 20 required");
    PathState st{spec.n, spec.p, 2 * spec.m, &spec.moments, {}, 0, 0};
    for (int v0 = 0; v0 < spec.n; ++v0) walk(st, 0, v0, v0);
    return st.total;
}

namespace {

// Wigner walk on [n]; edges unordered, diagonal allowed.
void wigner_walk(PathState& st, int t, int v0, int prev) {
    if (t == st.steps) {
        if (st.odd_edges == 0) st.total += leaf_value(st);
        return;
    }
    const int remaining = st.steps - t;
    for (int w = 0; w < st.n; ++w) {
        if (remaining == 1 && w != v0) continue;
        auto key = std::make_pair(std::min(prev, w), std::max(prev, w));
        touch_edge(st, key, +1);
        if (st.odd_edges <= remaining - 1) wigner_walk(st, t + 1, v0, w);
        touch_edge(st, key, -1);
    }
}

}  // namespace

mpq_class wigner_trace_exact(int n, int m, const std::map<int, mpq_class>& moments) {
    if (m < 1 || 2 * m > 10)
        throw std::invalid_argument("wigner_trace_exact: 2m <= 10 required");
    if (n < 1 || n > 20)
        throw std::invalid_argument("wigner_trace_exact: n <= 20 required");
    PathState st{n, 0, 2 * m, &moments, {}, 0, 0};
    for (int v0 = 0; v0 < n; ++v0) wigner_walk(st, 0, v0, v0);
    return st.total;
}

DominationResult wigner_domination_check(const PathSumSpec& spec) {
    DominationResult r;
    r.lhs = expected_trace_exact(spec);
    // the comparison matrix lives on the larger index set: the nonzero
    // spectrum of X^T X and X X^T coincide, so take p <= n w.l.o.g.
    r.rhs = wigner_trace_exact(std::max(spec.n, spec.p), spec.m, spec.moments);
    r.pass = r.lhs <= r.rhs;
    return r;
}

}  // namespace rmt
