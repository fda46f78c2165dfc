#include <benchmark/benchmark.h>

#include "gridcut/attack_engine.hpp"
#include "gridcut/case_io.hpp"
#include "gridcut/experiment.hpp"
#include "gridcut/planner.hpp"

using namespace gridcut;

namespace {

#ifndef GRIDCUT_CASE_DIR
#define GRIDCUT_CASE_DIR "cases"
#endif

GridTopology load_bench_case(const char* name) {
  return load_case(std::string(GRIDCUT_CASE_DIR) + "/" + name, CaseFormat::MatpowerCase).topology;
}

MeasurementSet scenario_for(const GridTopology& topo, double protect_fraction) {
  ScenarioConfig config;
  config.seed = 7;
  config.protect_fraction = protect_fraction;
  return randomize_scenario(topo, config, 0);
}

void BM_OptimalAttack14(benchmark::State& state) {
  const GridTopology topo = load_bench_case("ieee14.m");
  const MeasurementSet ms = scenario_for(topo, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_attack(topo, ms).cardinality);
}
BENCHMARK(BM_OptimalAttack14);

void BM_OptimalAttack118(benchmark::State& state) {
  const GridTopology topo = load_bench_case("ieee118.m");
  const MeasurementSet ms = scenario_for(topo, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_attack(topo, ms).cardinality);
}
BENCHMARK(BM_OptimalAttack118);

void BM_GreedyProtect118(benchmark::State& state) {
  const GridTopology topo = load_bench_case("ieee118.m");
  const MeasurementSet ms = scenario_for(topo, 1.0 / 6.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_protect(topo, ms, k).steps.size());
  }
}
BENCHMARK(BM_GreedyProtect118)->Arg(1)->Arg(4);

void BM_GreedyPmu30(benchmark::State& state) {
  const GridTopology topo = load_bench_case("ieee30.m");
  const MeasurementSet ms = scenario_for(topo, 0.1);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_pmu(topo, ms, k).steps.size());
  }
}
BENCHMARK(BM_GreedyPmu30)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
