// Acceptance suite: end-to-end checks of the attack engine, oracles,
// planners and experiment harness on the bundled IEEE cases. Prints one
// PASS/FAIL line per criterion; exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridcut/attack_engine.hpp"
#include "gridcut/case_io.hpp"
#include "gridcut/errors.hpp"
#include "gridcut/experiment.hpp"
#include "gridcut/l1_baseline.hpp"
#include "gridcut/mincut.hpp"
#include "gridcut/oracle.hpp"
#include "gridcut/planner.hpp"
#include "gridcut/rng.hpp"
#include "test_util.hpp"

using namespace gridcut;

namespace {

std::string g_cases;
constexpr std::uint64_t kSeed = 2026;

GridTopology load(const std::string& name) {
  return load_case(g_cases + "/" + name, CaseFormat::MatpowerCase).topology;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << message;
    }
  }
  void note(const std::string& message) {
    if (detail.tellp() > 0) detail << "; ";
    detail << message;
  }
};

// Per-trial monotonicity over the sorted sweep values of one trial, treating
// infeasible as +infinity (it must then stay infeasible under nesting).
void check_per_trial_monotone(Check& c, const SweepResult& result, int trials) {
  const std::size_t value_count = result.rows.size();
  for (int trial = 0; trial < trials; ++trial) {
    long long prev = -1;
    bool was_infeasible = false;
    for (std::size_t v = 0; v < value_count; ++v) {
      const TrialRecord& rec =
          result.raw[v * static_cast<std::size_t>(trials) + static_cast<std::size_t>(trial)];
      if (was_infeasible) {
        c.require(rec.status == AttackStatus::Infeasible,
                  "trial lost infeasibility under nested protection");
        continue;
      }
      if (rec.status == AttackStatus::Infeasible) {
        was_infeasible = true;
        continue;
      }
      c.require(rec.cardinality >= prev, "per-trial cardinality decreased");
      prev = rec.cardinality;
    }
  }
}

// Means over the trials that stay feasible through every sweep value (the
// nested draws pair trials across values, so this is a like-for-like mean).
std::vector<double> paired_feasible_means(Check& c, const SweepResult& result, int trials) {
  const std::size_t value_count = result.rows.size();
  std::vector<bool> always_feasible(static_cast<std::size_t>(trials), true);
  for (std::size_t v = 0; v < value_count; ++v) {
    for (int t = 0; t < trials; ++t) {
      if (result.raw[v * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)].status ==
          AttackStatus::Infeasible) {
        always_feasible[static_cast<std::size_t>(t)] = false;
      }
    }
  }
  int kept = 0;
  for (bool keep : always_feasible) kept += keep;
  c.require(kept > 0, "every paired trial hit infeasibility");

  std::vector<double> means;
  for (std::size_t v = 0; v < value_count; ++v) {
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      if (!always_feasible[static_cast<std::size_t>(t)]) continue;
      sum += static_cast<double>(
          result.raw[v * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)]
              .cardinality);
    }
    means.push_back(kept > 0 ? sum / kept : 0.0);
  }
  return means;
}

void check_means_non_decreasing(Check& c, const std::vector<double>& means,
                                const std::string& label) {
  for (std::size_t i = 1; i < means.size(); ++i) {
    c.require(means[i] + 1e-12 >= means[i - 1], label + ": mean decreased at index " +
                                                    std::to_string(i));
  }
}

// ---------------------------------------------------------------------------

void criterion1_oracle_equivalence(Check& c) {
  const GridTopology topo = load("ieee14.m");
  const double fractions[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  ScenarioConfig config;
  config.seed = kSeed;
  int agreements = 0;
  const int scenarios = 204;  // 34 trials x 6 fractions
  for (int s = 0; s < scenarios; ++s) {
    config.protect_fraction = fractions[s % 6];
    const MeasurementSet ms = randomize_scenario(topo, config, s / 6);
    const AttackResult engine = optimal_attack(topo, ms);
    const OracleReport oracle = brute_force_attack(topo, ms);
    if (engine.status == AttackStatus::Infeasible) {
      c.require(!oracle.optimal_cardinality.has_value(),
                "engine infeasible but oracle found an attack");
    } else {
      c.require(oracle.optimal_cardinality.has_value(), "oracle infeasible but engine attacked");
      if (oracle.optimal_cardinality) {
        c.require(engine.cardinality == *oracle.optimal_cardinality,
                  "cardinality mismatch at scenario " + std::to_string(s));
      }
    }
    ++agreements;
  }
  c.note(std::to_string(agreements) + "/" + std::to_string(scenarios) + " scenarios exact");
}

void criterion2_residual_invariance(Check& c) {
  const GridTopology topo = load("ieee14.m");
  ScenarioConfig config;
  config.seed = kSeed;
  config.protect_fraction = 0.2;
  const MeasurementSet ms = randomize_scenario(topo, config, 0);
  const AttackResult attack = optimal_attack(topo, ms);
  c.require(attack.status == AttackStatus::Optimal, "fixture attack not optimal");
  try {
    const HiddenCheckReport rep = verify_hidden(topo, ms, attack, 1000, 0.01, kSeed);
    std::ostringstream s;
    s << "1000 trials, max residual diff " << rep.max_residual_diff << ", max shift err "
      << rep.max_shift_error;
    c.note(s.str());
  } catch (const VerificationFailure& e) {
    c.require(false, std::string("hidden check failed: ") + e.what());
  }

  const GridTopology chain = testutil::chain3();
  const MeasurementSet chain_ms = testutil::chain3_meters();
  const AttackResult chain_attack = optimal_attack(chain, chain_ms);
  try {
    verify_hidden(chain, chain_ms, chain_attack, 1000, 0.01, kSeed + 1);
  } catch (const VerificationFailure& e) {
    c.require(false, std::string("chain hidden check failed: ") + e.what());
  }
}

void criterion3_l1_sandwich(Check& c) {
  const GridTopology topo = load("ieee14.m");
  ScenarioConfig config;
  config.seed = kSeed;
  config.protect_fraction = 0.15;
  int strict = -1;
  int strict_gap = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const MeasurementSet ms = randomize_scenario(topo, config, trial);
    const AttackResult engine = optimal_attack(topo, ms);
    const L1Result l1 = l1_attack(topo, ms);
    if (engine.status != AttackStatus::Optimal) {
      c.require(l1.lp_status == LpStatus::Infeasible, "l1 feasible where engine infeasible");
      continue;
    }
    c.require(l1.lp_status == LpStatus::Optimal, "l1 infeasible on an attackable scenario");
    c.require(l1.cardinality >= engine.cardinality,
              "sandwich violated at trial " + std::to_string(trial));
    c.require(l1.cardinality <= ms.size(), "l1 support exceeds m");
    if (strict < 0 && l1.cardinality > engine.cardinality) {
      strict = trial;
      strict_gap = static_cast<int>(l1.cardinality - engine.cardinality);
    }
  }
  c.require(strict >= 0, "no strict l1 gap among the 20 fixtures");
  if (strict >= 0) {
    c.note("strict gap fixture: seed " + std::to_string(kSeed) + " trial " +
           std::to_string(strict) + " (l1 exceeds min-cut by " + std::to_string(strict_gap) + ")");
  }
}

void criterion4_pruning_soundness(Check& c) {
  const GridTopology topo = load("ieee14.m");
  ScenarioConfig config;
  config.seed = kSeed;
  config.protect_fraction = 1.0 / 6.0;
  int checked = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const MeasurementSet ms = randomize_scenario(topo, config, trial);
    const AttackResult base = optimal_attack(topo, ms);
    if (base.status != AttackStatus::Optimal) continue;
    const std::set<int> support(base.attacked_measurements.begin(),
                                base.attacked_measurements.end());
    for (int id : ms.unprotected_ids()) {
      if (support.count(id)) continue;
      const AttackResult hardened = optimal_attack(topo, ms.with_protection(id));
      c.require(hardened.status == AttackStatus::Optimal,
                "protection outside the cut changed feasibility");
      c.require(hardened.cardinality == base.cardinality,
                "protecting measurement " + std::to_string(id) + " changed the min-cut");
      ++checked;
    }
  }
  c.note(std::to_string(checked) + " outside-support protections left the cut unchanged");
}

void criterion5_greedy_vs_brute(Check& c) {
  const GridTopology topo = load("ieee14.m");
  ScenarioConfig config;
  config.seed = kSeed;
  config.protect_fraction = 1.0 / 6.0;
  long long max_gap = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const MeasurementSet ms = randomize_scenario(topo, config, trial);
    if (optimal_attack(topo, ms).status != AttackStatus::Optimal) continue;

    const PlanResult g1 = greedy_protect(topo, ms, 1);
    const ProtectionOracleReport b1 = brute_force_protection(topo, ms, 1);
    c.require(g1.steps[0].infeasible_after == b1.best_infeasible,
              "k=1 feasibility mismatch at trial " + std::to_string(trial));
    if (!b1.best_infeasible) {
      c.require(g1.steps[0].cardinality_after == b1.best_value,
                "k=1 greedy != brute force at trial " + std::to_string(trial));
    }

    const PlanResult g2 = greedy_protect(topo, ms, 2);
    const ProtectionOracleReport b2 = brute_force_protection(topo, ms, 2);
    if (!g2.steps[1].infeasible_after && !b2.best_infeasible) {
      c.require(g2.steps[1].cardinality_after <= b2.best_value, "k=2 greedy beat brute force");
      max_gap = std::max(max_gap, b2.best_value - g2.steps[1].cardinality_after);
    }
  }
  c.note("k=2 max gap (brute - greedy) = " + std::to_string(max_gap));
}

void criterion6_pmu_micro_case(Check& c) {
  const GridTopology chain = testutil::chain3();
  const MeasurementSet ms = expand_pmu(testutil::chain3_meters(), 2, true, chain);
  const AttackResult r = optimal_attack(chain, ms);
  c.require(r.status == AttackStatus::Infeasible, "secure PMU at the center is attackable");
  const OracleReport oracle = brute_force_attack(chain, ms);
  c.require(!oracle.optimal_cardinality.has_value(), "oracle found an attack after the PMU");
}

void criterion7_trends(Check& c) {
  // (a) protect_fraction on 14/30/118.
  const struct {
    const char* file;
    int trials;
  } protect_cases[] = {{"ieee14.m", 30}, {"ieee30.m", 20}, {"ieee118.m", 10}};
  for (const auto& pc : protect_cases) {
    const GridTopology topo = load(pc.file);
    ScenarioConfig config;
    config.seed = kSeed;
    config.trials = pc.trials;
    SweepSpec spec;
    spec.param = SweepParam::ProtectFraction;
    spec.values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    const SweepResult result = run_sweep(topo, config, spec, SweepEngine::MinCut);
    check_per_trial_monotone(c, result, pc.trials);
    check_means_non_decreasing(c, paired_feasible_means(c, result, pc.trials),
                               std::string(pc.file) + " protect_fraction");
  }

  // (b) secure-PMU fraction on 30/57 (counts = round(fraction * n)).
  for (const char* file : {"ieee30.m", "ieee57.m"}) {
    const GridTopology topo = load(file);
    ScenarioConfig config;
    config.seed = kSeed;
    config.trials = 10;
    SweepSpec spec;
    spec.param = SweepParam::PmuCount;
    for (double f : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
      spec.values.push_back(std::lround(f * topo.bus_count()));
    }
    const SweepResult result = run_sweep(topo, config, spec, SweepEngine::MinCut);
    check_per_trial_monotone(c, result, config.trials);
    check_means_non_decreasing(c, paired_feasible_means(c, result, config.trials),
                               std::string(file) + " pmu fraction");
  }

  // (c) greedy PMU placement on the 30-bus base case (1/10 protected).
  {
    const GridTopology topo = load("ieee30.m");
    ScenarioConfig config;
    config.seed = kSeed;
    config.trials = 10;
    config.protect_fraction = 0.1;
    SweepSpec spec;
    spec.param = SweepParam::GreedyK;
    spec.values = {0, 1, 2, 3, 4};
    spec.greedy_kind = PlanKind::Pmu;
    const SweepResult result = run_sweep(topo, config, spec, SweepEngine::MinCut);
    check_per_trial_monotone(c, result, config.trials);
    check_means_non_decreasing(c, paired_feasible_means(c, result, config.trials),
                               "ieee30.m greedy pmu");
  }

  // Small k moves the cut slowly: one greedy protection step on the 30-bus
  // fixture (1/6 protected) raises the cardinality by at most 1.
  {
    const GridTopology topo = load("ieee30.m");
    ScenarioConfig config;
    config.seed = kSeed;
    config.protect_fraction = 1.0 / 6.0;
    const MeasurementSet ms = randomize_scenario(topo, config, 0);
    const AttackResult base = optimal_attack(topo, ms);
    c.require(base.status == AttackStatus::Optimal, "30-bus fixture not attackable");
    const PlanResult plan = greedy_protect(topo, ms, 1);
    c.require(!plan.steps[0].infeasible_after, "single protection reached full protection");
    const long long increase = plan.steps[0].cardinality_after - base.cardinality;
    c.require(increase <= 1, "one greedy step raised the cut by " + std::to_string(increase));
    c.note("k=1 greedy increase on 30-bus fixture = " + std::to_string(increase));
  }
}

void criterion8_mincut_oracle(Check& c) {
  CounterRng rng(kSeed);
  int tested = 0;
  while (tested < 500) {
    const int buses = 2 + static_cast<int>(rng.below(8));  // graph nodes = buses + 1 <= 9+1
    // Spanning tree plus distinct extra pairs, so meter multiplicity alone
    // sets the edge weights (1..5).
    std::vector<Line> lines;
    std::set<std::pair<int, int>> used;
    for (int b = 2; b <= buses; ++b) {
      const int anchor = static_cast<int>(rng.below(static_cast<std::uint64_t>(b - 1))) + 1;
      lines.push_back({anchor, b, 1.0});
      used.insert({anchor, b});
    }
    for (int e = static_cast<int>(rng.below(5)); e > 0; --e) {
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(buses))) + 1;
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(buses))) + 1;
      if (a == b) continue;
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      if (used.count(key)) continue;
      used.insert(key);
      lines.push_back({key.first, key.second, 1.0});
    }
    const GridTopology topo(buses, lines);
    // Random meter multiplicities 1..5 per line; angle meters keep the
    // reference attached.
    std::vector<Measurement> meters;
    for (int l = 0; l < topo.line_count(); ++l) {
      const int copies = 1 + static_cast<int>(rng.below(5));
      for (int i = 0; i < copies; ++i) {
        meters.push_back({MeasurementKind::LineFlow, l, false, std::nullopt});
      }
    }
    for (int bus = 1; bus <= buses; ++bus) {
      if (bus == 1 || rng.uniform01() < 0.5) {
        const int copies = 1 + static_cast<int>(rng.below(5));
        for (int i = 0; i < copies; ++i) {
          meters.push_back({MeasurementKind::BusAngle, bus, false, std::nullopt});
        }
      }
    }
    const MeasurementSet ms(meters, {});
    const AttackGraph g = build_attack_graph(topo, ms);
    if (!g.connected()) continue;
    const CutResult cut = global_min_cut(g);
    const long long expected = testutil::bipartition_min_cut(g);
    c.require(cut.value == expected,
              "stoer-wagner " + std::to_string(cut.value) + " != exhaustive " +
                  std::to_string(expected));
    ++tested;
  }
  c.note("500 random multigraphs exact");
}

void criterion9_scale_freeness(Check& c) {
  const GridTopology topo = load("ieee14.m");
  ScenarioConfig config;
  config.seed = kSeed;
  config.protect_fraction = 0.2;
  CounterRng rng(kSeed + 9);
  for (int trial = 0; trial < 100; ++trial) {
    const MeasurementSet ms = randomize_scenario(topo, config, trial);
    std::vector<Line> scaled = topo.lines();
    for (Line& l : scaled) l.susceptance *= 0.05 + 20.0 * rng.uniform01();
    const GridTopology scaled_topo(topo.bus_count(), scaled);
    const AttackResult a = optimal_attack(topo, ms);
    const AttackResult b = optimal_attack(scaled_topo, ms);
    c.require(a.status == b.status, "status changed under rescaling");
    c.require(a.cardinality == b.cardinality, "cardinality changed under rescaling");
    c.require(a.attacked_measurements == b.attacked_measurements,
              "attacked set changed under rescaling");
  }
  c.note("100 scenarios invariant under random susceptance rescaling");
}

}  // namespace

int main(int argc, char** argv) {
  g_cases = argc > 1 ? argv[1] : "cases";

  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "min-cut engine equals the exhaustive oracle on randomized 14-bus scenarios", 60.0,
       criterion1_oracle_equivalence},
      {2, "hidden attacks leave the residual unchanged and shift the estimate by c", 10.0,
       criterion2_residual_invariance},
      {3, "thresholded l1 never undercounts and strictly overcounts on a fixture", 60.0,
       criterion3_l1_sandwich},
      {4, "protecting outside the optimal attack support never raises the min-cut", 60.0,
       criterion4_pruning_soundness},
      {5, "greedy protection matches brute force at k=1 and never beats it at k=2", 120.0,
       criterion5_greedy_vs_brute},
      {6, "secure PMU at the 3-bus chain center makes attacks infeasible", 10.0,
       criterion6_pmu_micro_case},
      {7, "hardening trends: protection, PMU fraction and greedy k never lower the mean cut",
       300.0, criterion7_trends},
      {8, "stoer-wagner equals the exhaustive bipartition minimum on 500 multigraphs", 30.0,
       criterion8_mincut_oracle},
      {9, "attack cardinality and support ignore susceptance magnitudes", 60.0,
       criterion9_scale_freeness},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_seconds) {
      check.require(false, "runtime " + std::to_string(elapsed) + "s exceeds budget");
    }
    std::printf("[%s] criterion %d: %s (%.2fs%s%s)\n", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, elapsed, check.detail.tellp() > 0 ? "; " : "",
                check.detail.str().c_str());
    failures += check.ok ? 0 : 1;
  }
  return failures;
}
