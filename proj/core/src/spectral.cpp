#include "rmt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmt {

namespace {

inline double conj_(double x) { return x; }
inline std::complex<double> conj_(const std::complex<double>& x) { return std::conj(x); }

// Householder reduction of a column-major n x p matrix (n >= p) to a real
// bidiagonal (d, e). Singular vectors are not accumulated. For complex
// input the bidiagonal entries come out complex; their singular values are
// invariant under diagonal phase scalings, so magnitudes are taken.
template <typename T>
void bidiagonalize(std::vector<T>& a, int n, int p,
                   std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> T& { return a[static_cast<std::size_t>(j) * n + i]; };
    d.assign(p, 0.0);
    e.assign(p > 1 ? p - 1 : 0, 0.0);
    std::vector<T> w(std::max(n, p));
    std::vector<T> tmp(std::max(n, p));

    for (int k = 0; k < p; ++k) {
        // left reflector: zero column k below the diagonal
        {
            double norm2 = 0.0;
            for (int i = k; i < n; ++i) norm2 += std::norm(std::complex<double>(at(i, k)));
            double norm = std::sqrt(norm2);
            if (norm > 0.0) {
                T alpha = at(k, k);
                double aa = std::abs(std::complex<double>(alpha));
                T phase = (aa > 0.0) ? alpha / static_cast<T>(aa) : static_cast<T>(1.0);
                T beta = -phase * static_cast<T>(norm);
                // w = x - beta * e1, H = I - 2 w w* / |w|^2, H x = beta e1
                double wnorm2 = 0.0;
                for (int i = k; i < n; ++i) {
                    w[i] = at(i, k);
                    if (i == k) w[i] -= beta;
                    wnorm2 += std::norm(std::complex<double>(w[i]));
                }
                if (wnorm2 > 0.0) {
                    const double c = 2.0 / wnorm2;
                    for (int j = k + 1; j < p; ++j) {
                        T dot{};
                        for (int i = k; i < n; ++i) dot += conj_(w[i]) * at(i, j);
                        dot *= static_cast<T>(c);
                        for (int i = k; i < n; ++i) at(i, j) -= w[i] * dot;
                    }
                }
                at(k, k) = beta;
                for (int i = k + 1; i < n; ++i) at(i, k) = T{};
            }
            d[k] = std::abs(std::complex<double>(at(k, k)));
        }

        // right reflector: zero row k beyond the first superdiagonal
        if (k < p - 1) {
            double norm2 = 0.0;
            for (int j = k + 1; j < p; ++j) norm2 += std::norm(std::complex<double>(at(k, j)));
            double norm = std::sqrt(norm2);
            if (norm > 0.0 && k + 2 < p) {
                // x = conj(row), reflector applied from the right
                T alpha = conj_(at(k, k + 1));
                double aa = std::abs(std::complex<double>(alpha));
                T phase = (aa > 0.0) ? alpha / static_cast<T>(aa) : static_cast<T>(1.0);
                T beta = -phase * static_cast<T>(norm);
                double wnorm2 = 0.0;
                for (int j = k + 1; j < p; ++j) {
                    w[j] = conj_(at(k, j));
                    if (j == k + 1) w[j] -= beta;
                    wnorm2 += std::norm(std::complex<double>(w[j]));
                }
                if (wnorm2 > 0.0) {
                    const double c = 2.0 / wnorm2;
                    // A <- A (I - c w w*): for each row i, dot = sum_j A(i,j) w[j]
                    for (int i = k; i < n; ++i) tmp[i] = T{};
                    for (int j = k + 1; j < p; ++j) {
                        const T wj = w[j];
                        for (int i = k; i < n; ++i) tmp[i] += at(i, j) * wj;
                    }
                    for (int j = k + 1; j < p; ++j) {
                        const T cwj = static_cast<T>(c) * conj_(w[j]);
                        for (int i = k; i < n; ++i) at(i, j) -= tmp[i] * cwj;
                    }
                }
                at(k, k + 1) = conj_(beta);
                for (int j = k + 2; j < p; ++j) at(k, j) = T{};
            }
            e[k] = std::abs(std::complex<double>(at(k, k + 1)));
        }
    }
}

// Singular values of a real bidiagonal matrix (diagonal d, superdiagonal e)
// by the implicit-shift QR iteration. Deflation threshold is relative
// 1e-14; exceeding the sweep cap is a hard error.
std::vector<double> bidiagonal_singular_values(std::vector<double> d, std::vector<double> e) {
    const int p = static_cast<int>(d.size());
    if (p == 0) return {};
    e.resize(p, 0.0);  // e[p-1] is a guard slot, always 0
    const double eps = 1e-14;
    const double tiny = 1e-300;
    const int sweep_cap = 30 * p;
    int sweeps = 0;

    int pp = p;  // active trailing block ends at pp-1
    while (pp > 0) {
        int k, kase;
        // find the largest k with negligible e[k]; block is (k, pp-1]
        for (k = pp - 2; k >= -1; --k) {
            if (k == -1) break;
            if (std::abs(e[k]) <= tiny + eps * (std::abs(d[k]) + std::abs(d[k + 1]))) {
                e[k] = 0.0;
                break;
            }
        }
        if (k == pp - 2) {
            kase = 4;  // d[pp-1] converged
        } else {
            int ks;
            for (ks = pp - 1; ks >= k; --ks) {
                if (ks == k) break;
                double t = (ks != pp - 1 ? std::abs(e[ks]) : 0.0) +
                           (ks != k + 1 ? std::abs(e[ks - 1]) : 0.0);
                if (std::abs(d[ks]) <= tiny + eps * t) {
                    d[ks] = 0.0;
                    break;
                }
            }
            if (ks == k) {
                kase = 3;
            } else if (ks == pp - 1) {
                kase = 1;
            } else {
                kase = 2;
                k = ks;
            }
        }
        ++k;

        switch (kase) {
            case 1: {  // deflate negligible d[pp-1]: rotate e[pp-2] away
                double f = e[pp - 2];
                e[pp - 2] = 0.0;
                for (int j = pp - 2; j >= k; --j) {
                    double t = std::hypot(d[j], f);
                    double cs = (t != 0.0) ? d[j] / t : 1.0;
                    double sn = (t != 0.0) ? f / t : 0.0;
                    d[j] = t;
                    if (j != k) {
                        f = -sn * e[j - 1];
                        e[j - 1] = cs * e[j - 1];
                    }
                }
                break;
            }
            case 2: {  // split at negligible d[k-1]
                double f = e[k - 1];
                e[k - 1] = 0.0;
                for (int j = k; j < pp; ++j) {
                    double t = std::hypot(d[j], f);
                    double cs = (t != 0.0) ? d[j] / t : 1.0;
                    double sn = (t != 0.0) ? f / t : 0.0;
                    d[j] = t;
                    if (j != pp - 1) {
                        f = -sn * e[j];
                        e[j] = cs * e[j];
                    }
                }
                break;
            }
            case 3: {  // QR step on block [k, pp-1]
                if (++sweeps > sweep_cap) {
                    throw std::runtime_error(
                        "bidiagonal QR failed to converge within " +
                        std::to_string(sweep_cap) + " sweeps");
                }
                double scale = std::max({std::abs(d[pp - 1]), std::abs(d[pp - 2]),
                                         std::abs(e[pp - 2]), std::abs(d[k]),
                                         std::abs(e[k])});
                double sp = d[pp - 1] / scale;
                double spm1 = d[pp - 2] / scale;
                double epm1 = e[pp - 2] / scale;
                double sk = d[k] / scale;
                double ek = e[k] / scale;
                double b = ((spm1 + sp) * (spm1 - sp) + epm1 * epm1) / 2.0;
                double c = (sp * epm1) * (sp * epm1);
                double shift = 0.0;
                if (b != 0.0 || c != 0.0) {
                    shift = std::sqrt(b * b + c);
                    if (b < 0.0) shift = -shift;
                    shift = c / (b + shift);
                }
                double f = (sk + sp) * (sk - sp) + shift;
                double g = sk * ek;
                for (int j = k; j < pp - 1; ++j) {
                    double t = std::hypot(f, g);
                    double cs = (t != 0.0) ? f / t : 1.0;
                    double sn = (t != 0.0) ? g / t : 0.0;
                    if (j != k) e[j - 1] = t;
                    f = cs * d[j] + sn * e[j];
                    e[j] = cs * e[j] - sn * d[j];
                    g = sn * d[j + 1];
                    d[j + 1] = cs * d[j + 1];
                    t = std::hypot(f, g);
                    cs = (t != 0.0) ? f / t : 1.0;
                    sn = (t != 0.0) ? g / t : 0.0;
                    d[j] = t;
                    f = cs * e[j] + sn * d[j + 1];
                    d[j + 1] = -sn * e[j] + cs * d[j + 1];
                    if (j < pp - 2) {
                        g = sn * e[j + 1];
                        e[j + 1] = cs * e[j + 1];
                    }
                }
                e[pp - 2] = f;
                break;
            }
            case 4: {  // converged
                if (d[k] < 0.0) d[k] = -d[k];
                --pp;
                break;
            }
        }
    }
    return d;
}

template <typename T>
std::vector<double> singular_values(std::vector<T> a, int n, int p) {
    std::vector<double> d, e;
    bidiagonalize(a, n, p, d, e);
    return bidiagonal_singular_values(std::move(d), std::move(e));
}

Spectrum finish_spectrum(std::vector<double> sv, int n, int p, std::uint64_t seed) {
    Spectrum s;
    s.n = n;
    s.p = p;
    s.seed = seed;
    s.eigenvalues.reserve(p);
    for (double v : sv) s.eigenvalues.push_back(v * v);
    while (static_cast<int>(s.eigenvalues.size()) < p) s.eigenvalues.push_back(0.0);
    std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

void check_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite matrix entry");
}

}  // namespace

Spectrum gram_eigenvalues_real(const std::vector<double>& a, int n, int p) {
    check_finite(a);
    std::vector<double> sv;
    if (p <= n) {
        sv = singular_values(a, n, p);
    } else {
        // transpose: singular values coincide, p-n null eigenvalues appended
        std::vector<double> t(a.size());
        for (int j = 0; j < p; ++j)
            for (int i = 0; i < n; ++i)
                t[static_cast<std::size_t>(i) * p + j] = a[static_cast<std::size_t>(j) * n + i];
        sv = singular_values(t, p, n);
    }
    return finish_spectrum(std::move(sv), n, p, 0);
}

Spectrum gram_eigenvalues_complex(const std::vector<double>& re,
                                  const std::vector<double>& im, int n, int p) {
    check_finite(re);
    check_finite(im);
    std::vector<std::complex<double>> a(re.size());
    std::vector<double> sv;
    if (p <= n) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = {re[k], im[k]};
        sv = singular_values(std::move(a), n, p);
    } else {
        // conjugate transpose
        for (int j = 0; j < p; ++j)
            for (int i = 0; i < n; ++i) {
                std::size_t src = static_cast<std::size_t>(j) * n + i;
                a[static_cast<std::size_t>(i) * p + j] = {re[src], -im[src]};
            }
        sv = singular_values(std::move(a), p, n);
    }
    return finish_spectrum(std::move(sv), n, p, 0);
}

Spectrum gram_eigenvalues(const MatrixSample& X) {
    Spectrum s = X.is_complex()
                     ? gram_eigenvalues_complex(X.re, X.im, X.n(), X.p())
                     : gram_eigenvalues_real(X.re, X.n(), X.p());
    s.seed = X.seed;
    return s;
}

std::vector<double> top_k(const Spectrum& s, int k) {
    if (k < 1 || k > static_cast<int>(s.eigenvalues.size()))
        throw std::out_of_range("top_k: k out of range");
    return {s.eigenvalues.begin(), s.eigenvalues.begin() + k};
}

double trace_power(const Spectrum& s, int m) {
    if (m < 1) throw std::invalid_argument("trace_power: m must be >= 1");
    double sum = 0.0, comp = 0.0;  // Kahan
    for (double lam : s.eigenvalues) {
        double term = std::pow(lam, m);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if (!std::isfinite(sum))
        throw std::overflow_error("trace_power overflow at m=" + std::to_string(m));
    return sum;
}

EmpiricalSpectralDistribution::EmpiricalSpectralDistribution(const Spectrum& s,
                                                             double normalizer) {
    if (!(normalizer > 0.0))
        throw std::invalid_argument("ESD normalizer must be positive");
    points_.reserve(s.eigenvalues.size());
    for (double lam : s.eigenvalues) points_.push_back(lam / normalizer);
    std::sort(points_.begin(), points_.end());
}

double EmpiricalSpectralDistribution::operator()(double x) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

}  // namespace rmt
