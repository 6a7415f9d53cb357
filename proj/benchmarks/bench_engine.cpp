#include <benchmark/benchmark.h>

#include "normdyn/abm.hpp"
#include "normdyn/analysis.hpp"
#include "normdyn/dynamics.hpp"

using namespace normdyn;

static void BM_TransitionSystem(benchmark::State& state) {
  Params p;
  p.Z = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transition_system(p));
}
BENCHMARK(BM_TransitionSystem)->Arg(100)->Arg(1000);

static void BM_StationaryClosedForm(benchmark::State& state) {
  Params p;
  p.Z = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stationary_closed_form(p));
}
BENCHMARK(BM_StationaryClosedForm)->Arg(100)->Arg(1000);

static void BM_StationaryPowerIteration(benchmark::State& state) {
  Params p;
  p.Z = 100;
  for (auto _ : state) benchmark::DoNotOptimize(stationary_power_iteration(p));
}
BENCHMARK(BM_StationaryPowerIteration)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  Params p;
  p.c = 0.01;
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(p, {Axis::r, 0.0, 1.0}, {Axis::m, 0.0, 1.0}, 21, 1));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

static void BM_Simulation(benchmark::State& state) {
  SimConfig cfg;
  cfg.params.Z = 50;
  cfg.steps = 1'000'000;
  cfg.mode = state.range(0) ? SimMode::sampled_groups : SimMode::mean_field;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.steps);
}
BENCHMARK(BM_Simulation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
