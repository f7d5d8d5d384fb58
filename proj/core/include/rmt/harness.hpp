#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/scaling.hpp"

namespace rmt {

struct ExperimentConfig {
    EnsembleSpec spec;
    int replicas = 1;
    int k_top = 1;
    std::uint64_t master_seed = 0;
    bool johnstone_centering = false;
    int workers = 0;  // 0: hardware concurrency
};

struct EdgeRecord {
    int replica_index = 0;
    std::uint64_t seed = 0;
    std::vector<double> rescaled_topk;  // descending
    double lambda1_raw = 0.0;
};

// One record per replica; replica i uses derive_seed(master_seed, i), so the
// result array depends only on the config, not on worker count or order.
std::vector<EdgeRecord> run_edge_experiment(const ExperimentConfig& cfg);

std::vector<double> rescaled_lambda(const std::vector<EdgeRecord>& records, int k = 1);

// sup_x |empirical CDF - cdf|, evaluated from both sides at each sample
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct UniversalityReport {
    double two_sample_ks = 0.0;
    double threshold = 0.0;  // 1.5 * 1.36 * sqrt((Na+Nb)/(Na*Nb))
    bool same_law = false;
    double ks_a_vs_limit = 0.0;  // vs F_beta for each sample's own field
    double ks_b_vs_limit = 0.0;
    bool conjecture_level = false;  // set when either config has n - p growing
};

UniversalityReport universality_comparison(const std::vector<double>& a, int beta_a,
                                           const std::vector<double>& b, int beta_b);
UniversalityReport universality_comparison(const ExperimentConfig& a,
                                           const ExperimentConfig& b);

struct TailBoundReport {
    std::vector<double> s_grid;
    std::vector<double> survival;       // empirical P(lambda1 > mu + sigma s)
    double decay_rate = 0.0;            // slope of log survival vs s (<= 0 expected)
    double max_scaled_deviation = 0.0;  // max (lambda1 - mu) / (sqrt(p) log p)
    bool bounded = false;               // max_scaled_deviation < 1
};

TailBoundReport tail_bound_experiment(const std::vector<EdgeRecord>& records,
                                      const ExperimentConfig& cfg,
                                      const std::vector<double>& s_grid);
TailBoundReport tail_bound_experiment(const ExperimentConfig& cfg,
                                      const std::vector<double>& s_grid);

struct TraceMomentRow {
    int m = 0;
    double mc_mean = 0.0;
    double std_error = 0.0;
    double prediction = 0.0;  // trace_growth_constant(gamma) * p * mu^m / m^{3/2}
    double ratio = 0.0;
    bool asymptotic_regime = true;  // false once m = Theta(sqrt(p)); ratio bound only
};

std::vector<TraceMomentRow> trace_moment_experiment(const ExperimentConfig& cfg,
                                                    const std::vector<int>& m_values);

struct TopkJointReport {
    std::vector<double> s_grid;
    std::vector<double> cdf1;         // empirical P(lambda_1 <= s)
    std::vector<double> cdf2;         // empirical P(lambda_2 <= s)
    std::vector<double> count1_pred;  // P(exactly one point above s)
    double max_consistency_gap = 0.0;  // sup |(cdf2 - cdf1) - count1_pred|
    double ks_lambda2 = 0.0;           // rescaled lambda_2 vs its predicted CDF
};

// Predictions are the complex-case (beta = 2) determinantal ones.
TopkJointReport topk_joint_experiment(const std::vector<EdgeRecord>& records,
                                      const std::vector<double>& s_grid);
TopkJointReport topk_joint_experiment(const ExperimentConfig& cfg,
                                      const std::vector<double>& s_grid);

// CSV / summary persistence (the CLI's on-disk contract)
void write_edge_records_csv(const std::string& path,
                            const std::vector<EdgeRecord>& records);
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);
std::string format_double(double v);  // round-trip precision
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace rmt
