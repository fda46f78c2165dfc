#include <benchmark/benchmark.h>

#include <vector>

#include "gridcut/attack_graph.hpp"
#include "gridcut/measurement.hpp"
#include "gridcut/mincut.hpp"
#include "gridcut/rng.hpp"
#include "gridcut/topology.hpp"

using namespace gridcut;

namespace {

// Connected random grid with flow meters everywhere and angle meters on 60%
// of the buses, mirroring the experiment protocol.
struct Fixture {
  GridTopology topo;
  MeasurementSet meters;
};

Fixture make_fixture(int buses, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Line> lines;
  for (int b = 2; b <= buses; ++b) {
    const int anchor = static_cast<int>(rng.below(static_cast<std::uint64_t>(b - 1))) + 1;
    lines.push_back({anchor, b, 1.0});
  }
  for (int e = 0; e < buses / 2; ++e) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(buses))) + 1;
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(buses))) + 1;
    if (a == b) b = a == buses ? 1 : a + 1;
    lines.push_back({a, b, 1.0});
  }
  GridTopology topo(buses, lines);
  std::vector<Measurement> meters;
  for (int l = 0; l < topo.line_count(); ++l) {
    meters.push_back({MeasurementKind::LineFlow, l, false, std::nullopt});
  }
  for (int b = 1; b <= buses; ++b) {
    if (rng.uniform01() < 0.6) meters.push_back({MeasurementKind::BusAngle, b, false, std::nullopt});
  }
  return {std::move(topo), MeasurementSet(std::move(meters), {})};
}

void BM_GlobalMinCut(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 17);
  const AttackGraph g = build_attack_graph(f.topo, f.meters);
  for (auto _ : state) {
    benchmark::DoNotOptimize(global_min_cut(g).value);
  }
}
BENCHMARK(BM_GlobalMinCut)->Arg(14)->Arg(30)->Arg(57)->Arg(118)->Arg(300);

void BM_BuildAndContract(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)), 23);
  for (auto _ : state) {
    const AttackGraph g = apply_protections(build_attack_graph(f.topo, f.meters), f.meters);
    benchmark::DoNotOptimize(g.supernode_count());
  }
}
BENCHMARK(BM_BuildAndContract)->Arg(30)->Arg(118)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
