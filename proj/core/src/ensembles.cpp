#include "rmt/ensembles.hpp"

#include <algorithm>
#include <cmath>

namespace rmt {

std::string family_name(Family f) {
    switch (f) {
        case Family::GaussianReal: return "gaussian";
        case Family::GaussianComplex: return "gaussian-complex";
        case Family::Rademacher: return "rademacher";
        case Family::SymmetricUniform: return "uniform";
        case Family::ScaledSymmetricDiscrete: return "discrete";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "gaussian") return Family::GaussianReal;
    if (name == "gaussian-complex") return Family::GaussianComplex;
    if (name == "rademacher") return Family::Rademacher;
    if (name == "uniform") return Family::SymmetricUniform;
    if (name == "discrete") return Family::ScaledSymmetricDiscrete;
    throw std::invalid_argument("unknown entry family: " + name);
}

EntryDistribution EntryDistribution::gaussian_real() {
    return EntryDistribution{Family::GaussianReal, {}, {}, false};
}

EntryDistribution EntryDistribution::gaussian_complex(bool wishart_convention) {
    return EntryDistribution{Family::GaussianComplex, {}, {}, wishart_convention};
}

EntryDistribution EntryDistribution::rademacher() {
    return EntryDistribution{Family::Rademacher, {-1.0, 1.0}, {0.5, 0.5}, false};
}

EntryDistribution EntryDistribution::symmetric_uniform() {
    return EntryDistribution{Family::SymmetricUniform, {}, {}, false};
}

EntryDistribution EntryDistribution::discrete(std::vector<double> values,
                                              std::vector<double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("discrete law needs matching values/weights");
    double total = 0.0;
    for (double w : weights) {
        if (w <= 0.0) throw std::invalid_argument("discrete weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("discrete weights must sum to 1");
    return EntryDistribution{Family::ScaledSymmetricDiscrete,
                             std::move(values), std::move(weights), false};
}

EnsembleSpec::EnsembleSpec(EntryDistribution e, int n_, int p_, FieldKind f)
    : entry(std::move(e)), n(n_), p(p_), field(f) {
    if (n < 1 || p < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    if (entry.family == Family::GaussianComplex && field != FieldKind::Complex)
        throw std::invalid_argument("gaussian-complex entries require a complex ensemble");
}

namespace {

double draw_real(const EntryDistribution& d, Xoshiro256pp& rng) {
    switch (d.family) {
        case Family::GaussianReal:
            return rng.normal();
        case Family::Rademacher:
            return (rng() >> 63) ? 1.0 : -1.0;
        case Family::SymmetricUniform:
            return (2.0 * rng.uniform01() - 1.0) * 1.7320508075688772935;
        case Family::ScaledSymmetricDiscrete: {
            double u = rng.uniform01();
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < d.values.size(); ++i) {
                acc += d.weights[i];
                if (u < acc) return d.values[i];
            }
            return d.values.back();
        }
        case Family::GaussianComplex:
            throw std::logic_error("complex family drawn as real");
    }
    return 0.0;
}

}  // namespace

MatrixSample sample_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
    MatrixSample out;
    out.spec = spec;
    out.seed = seed;
    const std::size_t count = static_cast<std::size_t>(spec.n) * spec.p;
    out.re.resize(count);
    Xoshiro256pp rng(seed);

    if (spec.field == FieldKind::Real) {
        for (std::size_t k = 0; k < count; ++k) out.re[k] = draw_real(spec.entry, rng);
        return out;
    }

    out.im.resize(count);
    if (spec.entry.family == Family::GaussianComplex) {
        // Default normalizes E|x|^2 = 1; the flag restores Re,Im ~ N(0,1).
        const double comp = spec.entry.wishart_convention ? 1.0 : 0.70710678118654752440;
        for (std::size_t k = 0; k < count; ++k) {
            out.re[k] = comp * rng.normal();
            out.im[k] = comp * rng.normal();
        }
    } else {
        // Complexified real family: (a + ib)/sqrt(2) keeps E x^2 = 0, E|x|^2 = 1.
        const double inv_sqrt2 = 0.70710678118654752440;
        for (std::size_t k = 0; k < count; ++k) {
            out.re[k] = inv_sqrt2 * draw_real(spec.entry, rng);
            out.im[k] = inv_sqrt2 * draw_real(spec.entry, rng);
        }
    }
    return out;
}

double entry_moment(const EntryDistribution& dist, int k) {
    if (k < 0) throw std::invalid_argument("moment order must be >= 0");
    if (dist.family == Family::ScaledSymmetricDiscrete) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dist.values.size(); ++i)
            acc += dist.weights[i] * std::pow(dist.values[i], k);
        return acc;
    }
    return entry_moment_exact(dist, k).get_d();
}

mpq_class entry_moment_exact(const EntryDistribution& dist, int k) {
    if (k < 0) throw std::invalid_argument("moment order must be >= 0");
    if (k == 0) return 1;
    switch (dist.family) {
        case Family::GaussianReal: {
            if (k % 2 == 1) return 0;
            mpz_class df = 1;  // (k-1)!! = (2m-1)!!
            for (int j = k - 1; j >= 3; j -= 2) df *= j;
            return mpq_class(df);
        }
        case Family::Rademacher:
            return (k % 2 == 0) ? 1 : 0;
        case Family::SymmetricUniform: {
            // E x^{2m} on [-sqrt(3), sqrt(3)]: 3^m / (2m+1).
            if (k % 2 == 1) return 0;
            mpz_class num = 1;
            for (int j = 0; j < k / 2; ++j) num *= 3;
            mpq_class q(num, k + 1);
            q.canonicalize();
            return q;
        }
        case Family::GaussianComplex:
        case Family::ScaledSymmetricDiscrete:
            throw std::invalid_argument("no exact closed-form moment for family " +
                                        family_name(dist.family));
    }
    return 0;
}

ConditionReport validate_conditions(const EntryDistribution& dist, int m_max) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    ConditionReport rep;

    if (dist.family == Family::ScaledSymmetricDiscrete) {
        // Symmetry: support closed under negation with matching weights.
        rep.symmetric = true;
        for (std::size_t i = 0; i < dist.values.size() && rep.symmetric; ++i) {
            bool found = false;
            for (std::size_t j = 0; j < dist.values.size(); ++j) {
                if (std::abs(dist.values[j] + dist.values[i]) < 1e-12 &&
                    std::abs(dist.weights[j] - dist.weights[i]) < 1e-12) {
                    found = true;
                    break;
                }
            }
            rep.symmetric = found;
        }
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < dist.values.size(); ++i) {
            mean += dist.weights[i] * dist.values[i];
            var += dist.weights[i] * dist.values[i] * dist.values[i];
        }
        rep.normalized = std::abs(mean) < 1e-12 && std::abs(var - 1.0) < 1e-12;
    } else {
        rep.symmetric = true;   // built-in continuous/Rademacher laws
        rep.normalized = true;
    }

    double c_min = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        ConditionRow row;
        row.m = m;
        if (dist.family == Family::GaussianComplex) {
            // Condition (iv') constrains the Re/Im components, which are
            // N(0, 1/2) under the default normalization.
            const double var = dist.wishart_convention ? 1.0 : 0.5;
            double df = 1.0;
            for (int j = 2 * m - 1; j >= 3; j -= 2) df *= j;
            row.even_moment = df * std::pow(var, m);
        } else {
            row.even_moment = entry_moment(dist, 2 * m);
        }
        // smallest C with E x^{2m} <= (C m)^m, cumulative over m' <= m
        c_min = std::max(c_min, std::pow(row.even_moment, 1.0 / m) / m);
        row.minimal_c = c_min;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace rmt
