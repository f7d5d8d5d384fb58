#include <benchmark/benchmark.h>

#include "rmt/airy_kernel.hpp"
#include "rmt/combinatorics.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/spectral.hpp"
#include "rmt/tracy_widom.hpp"

using namespace rmt;

static void BM_GramEigenvalues(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    EnsembleSpec spec(EntryDistribution::gaussian_real(), n, n, FieldKind::Real);
    MatrixSample x = sample_matrix(spec, 7);
    for (auto _ : state) benchmark::DoNotOptimize(gram_eigenvalues(x));
    state.SetComplexityN(n);
}
BENCHMARK(BM_GramEigenvalues)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_SampleMatrix(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    EnsembleSpec spec(EntryDistribution::rademacher(), n, n, FieldKind::Real);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_matrix(spec, seed++));
}
BENCHMARK(BM_SampleMatrix)->Arg(100)->Arg(400);

static void BM_FredholmGap(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fredholm_gap(-2.0));
}
BENCHMARK(BM_FredholmGap);

static void BM_TracyWidomTable(benchmark::State& state) {
    std::vector<double> grid;
    for (double s = -8.0; s <= 4.0; s += 0.05) grid.push_back(s);
    for (auto _ : state) benchmark::DoNotOptimize(tw_table(grid));
}
BENCHMARK(BM_TracyWidomTable);

static void BM_DyckPolynomials(benchmark::State& state) {
    int mmax = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dyck_polynomials(mmax));
}
BENCHMARK(BM_DyckPolynomials)->Arg(20)->Arg(40)->Arg(60);

static void BM_TracePower(benchmark::State& state) {
    EnsembleSpec spec(EntryDistribution::gaussian_real(), 300, 300, FieldKind::Real);
    MatrixSample x = sample_matrix(spec, 11);
    Spectrum sp = gram_eigenvalues(x);
    for (auto _ : state) benchmark::DoNotOptimize(trace_power(sp, 16));
}
BENCHMARK(BM_TracePower);

BENCHMARK_MAIN();
