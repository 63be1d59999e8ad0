#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>

#include "nsum/bounds.hpp"
#include "nsum/estimators.hpp"
#include "nsum/graphgen.hpp"

using namespace nsum;

namespace {

Instance make_er_instance(std::size_t n, double mean_degree) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.degrees = DegreeDistribution::er_truncated(
        n, mean_degree / static_cast<double>(n - 1));
    cfg.hidden_count = n / 20;
    cfg.seed = 1234;
    return generate(cfg);
}

}  // namespace

static void BM_Generate(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.degrees =
        DegreeDistribution::er_truncated(n, 30.0 / static_cast<double>(n - 1));
    cfg.hidden_count = n / 20;
    for (auto _ : state) {
        cfg.seed++;
        Instance inst = generate(cfg);
        benchmark::DoNotOptimize(inst.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Generate)->Arg(1'000)->Arg(10'000)->Arg(100'000);

static void BM_DrawSampleAndEstimate(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    Instance inst = make_er_instance(100'000, 30.0);
    ArdTable table = precompute_ard(inst);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Sample s = draw_sample(inst, m, ++seed);
        ArdSet ard;
        ard.records.reserve(m);
        for (NodeId v : s.ids)
            ard.records.push_back({v, table.reach[v], table.cases[v]});
        benchmark::DoNotOptimize(estimate_mor(ard, ZeroDegreePolicy::drop));
        benchmark::DoNotOptimize(estimate_ros(ard, ZeroDegreePolicy::drop));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_DrawSampleAndEstimate)->Arg(100)->Arg(1'000)->Arg(10'000);

static void BM_FBound(benchmark::State& state) {
    double beta = 1.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f_bound(beta, 5'000.0));
        beta += 1e-9;  // defeat constant folding
    }
}
BENCHMARK(BM_FBound);

static void BM_ErRosBoundMinimized(benchmark::State& state) {
    const std::size_t n = 100'001;
    const double p = 30.0 / static_cast<double>(n - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            er_ros_bound(1.05, 0.05, 1'000, n, p, DeltaPolicy::minimize()));
    }
}
BENCHMARK(BM_ErRosBoundMinimized);

static void BM_SfRosBoundMinimized(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf_ros_bound(1.05, 0.05, 1'000, 100'001, 2.5,
                                              DeltaPolicy::minimize(),
                                              SfMuMode::exact_pmf_mean));
    }
}
BENCHMARK(BM_SfRosBoundMinimized);

static void BM_ConvolveRsPmf(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    DegreeDistribution dist = DegreeDistribution::er_truncated(1'001, 0.03);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve_rs_pmf(dist, m));
    }
}
BENCHMARK(BM_ConvolveRsPmf)->Arg(10)->Arg(50);

static void BM_EmpiricalRsPmf(benchmark::State& state) {
    Instance inst = make_er_instance(10'000, 30.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(empirical_rs_pmf(inst, 100, 1'000, ++seed));
    }
}
BENCHMARK(BM_EmpiricalRsPmf);
