// Parallel simulation kernel against the serial reference on the same workload.
#include <benchmark/benchmark.h>

#include "intraday/closed_form.hpp"
#include "intraday/simulate.hpp"

namespace {

using namespace intraday;

ModelParams bench_params() { return ModelParams{}; }

SimOptions bench_options(std::size_t paths, int workers) {
    SimOptions opt;
    opt.n_paths = paths;
    opt.dt = 60.0;
    opt.workers = workers;
    return opt;
}

void BM_SummariesSerial(benchmark::State& state) {
    const ModelParams p = bench_params();
    const Policy pol = optimal_policy(p, true);
    const MarketState init{0, 0, 50, 50000};
    const auto opt = bench_options(std::size_t(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_summaries_serial(p, JumpParams{0.0}, pol, init, opt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SummariesParallel(benchmark::State& state) {
    const ModelParams p = bench_params();
    const Policy pol = optimal_policy(p, true);
    const MarketState init{0, 0, 50, 50000};
    const auto opt = bench_options(std::size_t(state.range(0)), int(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_summaries(p, JumpParams{0.0}, pol, init, opt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FullPathsSerial(benchmark::State& state) {
    const ModelParams p = bench_params();
    const Policy pol = optimal_policy(p, true);
    const MarketState init{0, 0, 50, 50000};
    const auto opt = bench_options(std::size_t(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_paths_serial(p, JumpParams{0.0}, pol, init, opt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FullPathsParallel(benchmark::State& state) {
    const ModelParams p = bench_params();
    const Policy pol = optimal_policy(p, true);
    const MarketState init{0, 0, 50, 50000};
    const auto opt = bench_options(std::size_t(state.range(0)), int(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(sample_paths(p, JumpParams{0.0}, pol, init, opt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_SummariesSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SummariesParallel)->Args({2000, 1})->Args({2000, 2})->Args({2000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullPathsSerial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullPathsParallel)->Args({500, 1})->Args({500, 2})->Args({500, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
