#include <benchmark/benchmark.h>

#include "tclevy/tclevy.hpp"

using namespace tclevy;

static void BM_StableIncrement(benchmark::State& state) {
    RandomStream s = make_stream(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_stable_increment(s, 0.9, 1.0 / 4096));
}
BENCHMARK(BM_StableIncrement);

static void BM_Subordinator(benchmark::State& state) {
    const double delta = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    std::uint64_t id = 0;
    for (auto _ : state) {
        RandomStream s = make_stream(2, id++);
        benchmark::DoNotOptimize(simulate_subordinator(s, 0.9, delta, 1.0));
    }
}
BENCHMARK(BM_Subordinator)->Arg(8)->Arg(12);

static void BM_ThetaStep(benchmark::State& state) {
    const SdeProblem p = builtin_paper_example();
    const SolverConfig config{static_cast<double>(state.range(0)) / 2.0, 1.0 / 256};
    const ThetaMethod method(p, config);
    const StepIncrements inc{State::Constant(1, 0.01), {}};
    State y = p.x0;
    for (auto _ : state) {
        y = method.step(0.5, y, inc);
        if (std::abs(y[0]) > 1e6) y = p.x0;
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_ThetaStep)->Arg(0)->Arg(1)->Arg(2);

static void BM_CoupledPath(benchmark::State& state) {
    const SdeProblem p = builtin_paper_example();
    ExperimentSpec spec;
    spec.theta = static_cast<double>(state.range(0)) / 2.0;
    spec.alpha = 0.9;
    spec.deltas = {1.0 / 512, 1.0 / 256, 1.0 / 128, 1.0 / 64};
    spec.ref_delta = 1.0 / 4096;
    spec.n_paths = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_coupled_terminals(p, spec));
        ++spec.seed;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.n_paths));
}
BENCHMARK(BM_CoupledPath)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
