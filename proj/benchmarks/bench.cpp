#include <benchmark/benchmark.h>

#include "qfkit/geometric.hpp"
#include "qfkit/lfun.hpp"
#include "qfkit/pairs.hpp"
#include "qfkit/specfun.hpp"

using namespace qfkit;

static void BM_MFunction(benchmark::State& state) {
    const MSpec spec{0, 1, 1, KernelSpec::standard(6.0, -4, 1)};
    const UpperHalfPoint z(0.17, 1.3);
    TruncationPolicy pol;
    pol.u_max = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(M_function(spec, z, pol));
}
BENCHMARK(BM_MFunction)->Arg(50)->Arg(200)->Arg(800);

static void BM_PairIntegral(benchmark::State& state) {
    const auto m = KernelSpec::power(6.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(L_pair_integral(0.5, 1.0, 2.0, m, m));
}
BENCHMARK(BM_PairIntegral)->Unit(benchmark::kMillisecond);

static void BM_ZagierSeries(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zagier_L_series(2.0, -7, state.range(0)));
}
BENCHMARK(BM_ZagierSeries)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PairClassReps(benchmark::State& state) {
    const Int t = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(pair_class_reps(-7, -8, t));
}
BENCHMARK(BM_PairClassReps)->Arg(15)->Arg(60)->Arg(240);

static void BM_TTransform(benchmark::State& state) {
    const double y = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(T_transform(GaussianChi{1.0}, y));
}
BENCHMARK(BM_TTransform)->Arg(0)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
