#include <benchmark/benchmark.h>

#include "mmv2i/model.hpp"
#include "mmv2i/simulator.hpp"

namespace {

using namespace mmv2i;

SimOptions options(std::int64_t trials, int threads) {
  SimOptions opt;
  opt.trials = trials;
  opt.threads = threads;
  opt.seed = 12345;
  return opt;
}

void bm_simulate_serial(benchmark::State& state) {
  const Scenario sc = urban_scenario();
  const auto opt = options(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_serial(sc, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
}

void bm_simulate_parallel(benchmark::State& state) {
  const Scenario sc = urban_scenario();
  const auto opt = options(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(sc, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
}

void bm_laplace_sampling(benchmark::State& state) {
  const Scenario sc = urban_scenario();
  const std::int64_t draws = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_interference_laplace(
        sc, LinkState::los, 3e6, 30.0, draws, 7));
  }
  state.SetItemsProcessed(state.iterations() * draws);
}

}  // namespace

BENCHMARK(bm_simulate_serial)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_simulate_parallel)
    ->ArgsProduct({{4096, 16384}, {2, 4, 0}})  // thread counts; 0 = runtime default
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_laplace_sampling)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
