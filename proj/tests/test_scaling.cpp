#include <cmath>

#include "doctest.h"
#include "rmt/ensembles.hpp"
#include "rmt/scaling.hpp"

using namespace rmt;

TEST_CASE("scaling constants in closed form") {
    auto c = scaling_constants(1, 1);
    CHECK(c.mu == doctest::Approx(4.0));
    CHECK(c.sigma == doctest::Approx(2.0 * std::pow(2.0, 1.0 / 3.0)));
    CHECK(c.gamma == doctest::Approx(1.0));
    CHECK(c.a == doctest::Approx(0.0));
    CHECK(c.b == doctest::Approx(4.0));

    auto d = scaling_constants(400, 100);
    CHECK(d.mu == doctest::Approx((20.0 + 10.0) * (20.0 + 10.0)));
    CHECK(d.gamma == doctest::Approx(4.0));
    CHECK(d.a == doctest::Approx(0.25));
    CHECK(d.b == doctest::Approx(2.25));
}

TEST_CASE("johnstone centering replaces n by n-1") {
    auto on = scaling_constants(101, 100, true);
    auto off = scaling_constants(100, 100, false);
    CHECK(on.mu == doctest::Approx(off.mu));
    CHECK(on.sigma == doctest::Approx(off.sigma));
    CHECK(scaling_constants(100, 100, true).mu < off.mu);
}

TEST_CASE("rescale round-trips") {
    auto c = scaling_constants(300, 200);
    for (double lam : {100.0, 500.0, 1100.0})
        CHECK(unrescale(rescale(lam, c), c) == doctest::Approx(lam).epsilon(1e-12));
}

TEST_CASE("MP density integrates to one and vanishes off support") {
    for (double gamma : {1.0, 2.0, 4.0}) {
        auto c = scaling_constants(static_cast<int>(gamma * 100), 100);
        CHECK(mp_density(c.a - 0.01, gamma) == 0.0);
        CHECK(mp_density(c.b + 0.01, gamma) == 0.0);
        // trapezoid over the open support with edge refinement via the CDF
        CHECK(mp_cdf(c.b + 1e-9, gamma) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(mp_cdf(c.a - 1e-9, gamma) ==
              doctest::Approx(gamma < 1.0 ? 1.0 - gamma : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("MP CDF is monotone and matches the density derivative") {
    const double gamma = 2.0;
    double prev = 0.0;
    for (double x = 0.0; x <= 2.5; x += 0.01) {
        double v = mp_cdf(x, gamma);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    // centered difference of the CDF reproduces the density in the bulk
    for (double x : {0.4, 0.8, 1.2, 1.6}) {
        double h = 1e-5;
        double num = (mp_cdf(x + h, gamma) - mp_cdf(x - h, gamma)) / (2 * h);
        CHECK(num == doctest::Approx(mp_density(x, gamma)).epsilon(1e-6));
    }
}

TEST_CASE("gamma = 1 closed form: quarter circle CDF value at the midpoint") {
    // For gamma = 1 the density is sqrt((4-x)/x)/(2 pi), singular at 0; the
    // substitution u = sqrt(x) gives the smooth integrand sqrt(4-u^2)/pi,
    // integrable by a plain midpoint rule.
    const int steps = 200000;
    double acc = 0.0;
    const double top = std::sqrt(2.0);
    for (int i = 0; i < steps; ++i) {
        double u = top * (i + 0.5) / steps;
        acc += std::sqrt(4.0 - u * u) / M_PI * top / steps;
    }
    CHECK(mp_cdf(2.0, 1.0) == doctest::Approx(acc).epsilon(1e-7));
    CHECK(acc == doctest::Approx(0.5 + 1.0 / M_PI).epsilon(1e-7));
}

TEST_CASE("gamma < 1 carries an atom at zero") {
    CHECK(mp_cdf(0.0, 0.5) == doctest::Approx(0.5));
    CHECK(mp_cdf(-1e-9, 0.5) == 0.0);
}

TEST_CASE("mp_distance vanishes on a quantile sample and flags a shifted one") {
    // points at the exact MP quantiles give the minimal possible sup distance
    const double gamma = 2.0;
    const int m = 200;
    std::vector<double> q(m);
    for (int i = 0; i < m; ++i) {
        // invert by bisection
        double target = (i + 0.5) / m, lo = 0.0, hi = 3.0;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (mp_cdf(mid, gamma) < target ? lo : hi) = mid;
        }
        q[i] = 0.5 * (lo + hi);
    }
    Spectrum s;
    s.eigenvalues.assign(q.rbegin(), q.rend());
    s.n = m;
    s.p = m;
    EmpiricalSpectralDistribution esd(s, 1.0);
    CHECK(mp_distance(esd, gamma) <= 0.5 / m + 1e-9);

    Spectrum t = s;
    for (auto& v : t.eigenvalues) v += 0.3;
    CHECK(mp_distance(EmpiricalSpectralDistribution(t, 1.0), gamma) > 0.1);
}
