#include <benchmark/benchmark.h>

#include "hypertheta/samples.hpp"
#include "hypertheta/theta.hpp"
#include "hypertheta/thomae.hpp"

namespace {

using namespace hypertheta;

void BM_PeriodMatrices(benchmark::State& state) {
    const Curve c = make_curve(named_sample(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(period_matrices(c));
}
BENCHMARK(BM_PeriodMatrices)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_ThetaConstant(benchmark::State& state) {
    const int g = static_cast<int>(state.range(0));
    const PeriodMatrices pm = period_matrices(make_curve(named_sample(g)));
    const ThetaContext ctx(pm.tau);
    const Partition p = enumerate_partitions(g, 0).front();
    for (auto _ : state) benchmark::DoNotOptimize(derivative_theta_constants(ctx, p));
}
BENCHMARK(BM_ThetaConstant)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_DerivativeThetaConstants(benchmark::State& state) {
    const int g = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const PeriodMatrices pm = period_matrices(make_curve(named_sample(g)));
    const ThetaContext ctx(pm.tau);
    const Partition p = enumerate_partitions(g, m).front();
    for (auto _ : state) benchmark::DoNotOptimize(derivative_theta_constants(ctx, p));
}
BENCHMARK(BM_DerivativeThetaConstants)
    ->Args({3, 2})
    ->Args({4, 2})
    ->Args({5, 2})
    ->Args({5, 3})
    ->Args({6, 3})
    ->Unit(benchmark::kMillisecond);

void BM_GeneralThomaeSum(benchmark::State& state) {
    const int g = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const Curve c = make_curve(named_sample(g));
    const PeriodMatrices pm = period_matrices(c);
    const Partition p = enumerate_partitions(g, m).front();
    const std::vector<int> k = default_k_set(p);
    for (auto _ : state) benchmark::DoNotOptimize(general_thomae_sum(c, pm.omega, p, k));
}
BENCHMARK(BM_GeneralThomaeSum)
    ->Args({3, 1})
    ->Args({4, 2})
    ->Args({5, 2})
    ->Args({5, 3})
    ->Args({6, 3})
    ->Unit(benchmark::kMicrosecond);

void BM_STensor(benchmark::State& state) {
    const int g = static_cast<int>(state.range(0));
    const Curve c = make_curve(named_sample(g));
    const PeriodMatrices pm = period_matrices(c);
    const Partition p = enumerate_partitions(g, 3).front();
    for (auto _ : state) benchmark::DoNotOptimize(s_structure_v(p, c, pm.omega));
}
BENCHMARK(BM_STensor)->DenseRange(5, 6)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
