// Parallel sweep vs the serial reference on an M-sweep of v(M,10,10).

#include <benchmark/benchmark.h>

#include "closfab/sim.hpp"

namespace {

using namespace closfab;

sim::SimConfig base_config(std::uint64_t arrivals) {
  sim::SimConfig c;
  c.fabric = FabricSpec::clos(1, 10, 10, 5);
  c.load_per_fiber = 2.0;
  c.arrivals = arrivals;
  c.seed = 7;
  return c;
}

std::vector<sim::SweepValue> middles() {
  std::vector<sim::SweepValue> v;
  for (int m = 1; m <= 10; ++m) v.emplace_back(m);
  return v;
}

void BM_SweepParallel(benchmark::State& state) {
  const auto base = base_config(static_cast<std::uint64_t>(state.range(0)));
  const auto values = middles();
  for (auto _ : state) benchmark::DoNotOptimize(sim::sweep(base, sim::SweepParam::Middles, values));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

void BM_SweepSerial(benchmark::State& state) {
  const auto base = base_config(static_cast<std::uint64_t>(state.range(0)));
  const auto values = middles();
  for (auto _ : state) benchmark::DoNotOptimize(sim::sweep_serial(base, sim::SweepParam::Middles, values));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

void BM_SingleRun(benchmark::State& state) {
  auto config = base_config(static_cast<std::uint64_t>(state.range(0)));
  config.fabric.middles = 6;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Arg(20'000)->Arg(100'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(20'000)->Arg(100'000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SingleRun)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
