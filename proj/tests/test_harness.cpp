#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rmt/harness.hpp"
#include "rmt/rng.hpp"
#include "rmt/tracy_widom.hpp"

using namespace rmt;

namespace {

ExperimentConfig small_config(std::uint64_t seed, int workers) {
    ExperimentConfig cfg;
    cfg.spec = EnsembleSpec(EntryDistribution::gaussian_real(), 20, 20, FieldKind::Real);
    cfg.replicas = 24;
    cfg.k_top = 3;
    cfg.master_seed = seed;
    cfg.workers = workers;
    return cfg;
}

bool records_equal(const std::vector<EdgeRecord>& a, const std::vector<EdgeRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].replica_index != b[i].replica_index) return false;
        if (a[i].seed != b[i].seed) return false;
        if (a[i].lambda1_raw != b[i].lambda1_raw) return false;
        if (a[i].rescaled_topk != b[i].rescaled_topk) return false;
    }
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("1x1 replica reproduces the hand-computed rescaling") {
    ExperimentConfig cfg;
    cfg.spec = EnsembleSpec(EntryDistribution::gaussian_real(), 1, 1, FieldKind::Real);
    cfg.replicas = 1;
    cfg.master_seed = 7;
    auto rec = run_edge_experiment(cfg);
    REQUIRE(rec.size() == 1);
    Xoshiro256pp g(derive_seed(7, 0));
    double x = g.normal();
    // mu = 4, sigma = 2 * 2^{1/3} at n = p = 1
    CHECK(rec[0].lambda1_raw == doctest::Approx(x * x).epsilon(1e-14));
    CHECK(rec[0].rescaled_topk[0] ==
          doctest::Approx((x * x - 4.0) / (2.0 * std::cbrt(2.0))).epsilon(1e-14));
}

TEST_CASE("identical configs give identical records for any worker count") {
    auto base = run_edge_experiment(small_config(11, 1));
    CHECK(records_equal(base, run_edge_experiment(small_config(11, 1))));
    CHECK(records_equal(base, run_edge_experiment(small_config(11, 3))));
    CHECK(records_equal(base, run_edge_experiment(small_config(11, 8))));
    CHECK_FALSE(records_equal(base, run_edge_experiment(small_config(12, 1))));
}

TEST_CASE("record streams are append-only under replica growth") {
    auto cfg_small = small_config(5, 2);
    auto cfg_big = cfg_small;
    cfg_big.replicas = 40;
    auto a = run_edge_experiment(cfg_small);
    auto b = run_edge_experiment(cfg_big);
    b.resize(a.size());
    CHECK(records_equal(a, b));
}

TEST_CASE("records are sorted, descending within each top-k block") {
    auto recs = run_edge_experiment(small_config(3, 4));
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].replica_index == static_cast<int>(i));
        for (std::size_t k = 1; k < recs[i].rescaled_topk.size(); ++k)
            CHECK(recs[i].rescaled_topk[k] <= recs[i].rescaled_topk[k - 1]);
    }
}

TEST_CASE("config validation") {
    auto cfg = small_config(1, 1);
    cfg.replicas = 0;
    CHECK_THROWS_AS(run_edge_experiment(cfg), std::invalid_argument);
    cfg = small_config(1, 1);
    cfg.k_top = 21;
    CHECK_THROWS_AS(run_edge_experiment(cfg), std::invalid_argument);
}

TEST_CASE("KS statistic: closed-form cases") {
    // empirical CDF of {0.5} x 2 against U(0,1)
    auto uniform = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    CHECK(ks_statistic({0.5, 0.5}, uniform) == doctest::Approx(0.5));
    // all samples identical at the median of a continuous cdf
    CHECK(ks_statistic({0.0, 0.0, 0.0},
                       [](double) { return 0.5; }) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_statistic({1.0}, uniform), std::invalid_argument);
}

TEST_CASE("KS statistic: inverse-transform self-consistency") {
    const TWTable& t = default_tw_table();
    Xoshiro256pp g(100);
    std::vector<double> samples;
    for (int i = 0; i < 10000; ++i)
        samples.push_back(tw_quantile(t, g.uniform01(), 2));
    auto cdf = [&](double s) { return tw_cdf(t, s, 2); };
    double d = ks_statistic(samples, cdf);
    CHECK(d < 0.02);
    // shifting the sample strictly inflates the statistic
    std::vector<double> shifted = samples;
    for (auto& s : shifted) s += 1.0;
    CHECK(ks_statistic(shifted, cdf) > d);
}

TEST_CASE("two-sample KS is a metric-like comparison") {
    std::vector<double> a, b, c;
    Xoshiro256pp g(4);
    for (int i = 0; i < 4000; ++i) {
        a.push_back(g.normal());
        b.push_back(g.normal());
        c.push_back(g.normal() + 2.0);
    }
    CHECK(ks_two_sample(a, a) == 0.0);
    CHECK(ks_two_sample(a, b) < 0.05);
    CHECK(ks_two_sample(a, c) > 0.5);
}

TEST_CASE("universality comparison applies the calibration threshold") {
    std::vector<double> a, b;
    const TWTable& t = default_tw_table();
    Xoshiro256pp g(9);
    for (int i = 0; i < 2000; ++i) {
        a.push_back(tw_quantile(t, g.uniform01(), 2));
        b.push_back(tw_quantile(t, g.uniform01(), 2));
    }
    auto rep = universality_comparison(a, 2, b, 2);
    CHECK(rep.threshold == doctest::Approx(1.5 * 1.36 * std::sqrt(2.0 / 2000.0)));
    CHECK(rep.same_law);
    CHECK(rep.ks_a_vs_limit < 0.05);

    // F1 vs F2 samples separate
    std::vector<double> c;
    for (int i = 0; i < 2000; ++i) c.push_back(tw_quantile(t, g.uniform01(), 1));
    CHECK_FALSE(universality_comparison(a, 2, c, 1).same_law);
}

TEST_CASE("tail bound report basics") {
    auto recs = run_edge_experiment(small_config(42, 2));
    auto rep = tail_bound_experiment(recs, small_config(42, 2), {-10.0, 0.0, 1.0, 2.0});
    CHECK(rep.survival[0] == 1.0);  // far-left threshold
    for (std::size_t k = 1; k < rep.survival.size(); ++k)
        CHECK(rep.survival[k] <= rep.survival[k - 1]);
    CHECK(std::isfinite(rep.max_scaled_deviation));
}

TEST_CASE("trace moment experiment: exact first moment") {
    ExperimentConfig cfg;
    cfg.spec = EnsembleSpec(EntryDistribution::gaussian_real(), 30, 30, FieldKind::Real);
    cfg.replicas = 400;
    cfg.master_seed = 18;
    auto rows = trace_moment_experiment(cfg, {1});
    REQUIRE(rows.size() == 1);
    // E Tr A = np exactly; MC mean within 4 standard errors
    CHECK(std::abs(rows[0].mc_mean - 900.0) < 4.0 * rows[0].std_error);
    CHECK(rows[0].asymptotic_regime);
}

TEST_CASE("top-k joint experiment: ordering and plumbing") {
    ExperimentConfig cfg;
    cfg.spec = EnsembleSpec(EntryDistribution::gaussian_complex(), 30, 30,
                            FieldKind::Complex);
    cfg.replicas = 200;
    cfg.k_top = 2;
    cfg.master_seed = 77;
    auto recs = run_edge_experiment(cfg);
    std::vector<double> grid = {-2.0, -1.0, 0.0};
    auto rep = topk_joint_experiment(recs, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(rep.cdf2[k] >= rep.cdf1[k]);
    CHECK(rep.ks_lambda2 < 0.25);  // small p, small N: plumbing-level tolerance

    ExperimentConfig bad = cfg;
    bad.k_top = 1;
    CHECK_THROWS_AS(topk_joint_experiment(bad, grid), std::invalid_argument);
}

TEST_CASE("CSV output is byte-stable and summary is key-value text") {
    auto recs = run_edge_experiment(small_config(6, 1));
    const std::string f1 = "/tmp/rmt_test_records_a.csv";
    const std::string f2 = "/tmp/rmt_test_records_b.csv";
    write_edge_records_csv(f1, recs);
    write_edge_records_csv(f2, run_edge_experiment(small_config(6, 5)));
    CHECK(slurp(f1) == slurp(f2));
    CHECK(slurp(f1).substr(0, 14) == "replica_index,");

    const std::string sf = "/tmp/rmt_test_summary.txt";
    write_summary(sf, {{"alpha", "1"}, {"beta", format_double(0.5)}});
    CHECK(slurp(sf) == "alpha = 1\nbeta = 0.5\n");
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    std::remove(sf.c_str());
}

TEST_CASE("config hash distinguishes configs") {
    auto a = small_config(1, 1);
    auto b = small_config(1, 1);
    CHECK(config_hash(a) == config_hash(b));
    b.replicas++;
    CHECK(config_hash(a) != config_hash(b));
    b = small_config(2, 1);
    CHECK(config_hash(a) != config_hash(b));
    // worker count is execution detail, not identity
    b = small_config(1, 9);
    CHECK(config_hash(a) == config_hash(b));
}
