#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gridcut/attack_engine.hpp"
#include "gridcut/errors.hpp"
#include "gridcut/oracle.hpp"
#include "gridcut/planner.hpp"
#include "gridcut/rng.hpp"
#include "test_util.hpp"

using namespace gridcut;
using namespace testutil;

TEST_CASE("star k=1 protects the lowest-id cut candidate, value stays 1") {
  const PlanResult plan = greedy_protect(star(4), star_meters(4), 1);
  REQUIRE(plan.steps.size() == 1);
  const PlanStep& s = plan.steps[0];
  CHECK(s.step == 1);
  CHECK(s.kind == PlanKind::Measurement);
  REQUIRE(s.chosen.has_value());
  CHECK(s.cardinality_after == 1);
  CHECK_FALSE(s.infeasible_after);
  // Protecting any single leaf flow keeps the cut at 1 (oracle agrees).
  const ProtectionOracleReport oracle = brute_force_protection(star(4), star_meters(4), 1);
  CHECK(oracle.best_value == 1);
}

TEST_CASE("star k=4 peels one leaf per step, never reaching infeasibility") {
  const PlanResult plan = greedy_protect(star(4), star_meters(4), 4);
  REQUIRE(plan.steps.size() == 4);
  for (const PlanStep& s : plan.steps) {
    CHECK(s.cardinality_after == 1);
    CHECK_FALSE(s.infeasible_after);
    CHECK(s.chosen.has_value());
  }
  // The angle meter stays attackable: the whole star can still shift.
  const AttackResult final_attack = optimal_attack(star(4), plan.final_measurements);
  CHECK(final_attack.status == AttackStatus::Optimal);
  CHECK(final_attack.cardinality == 1);
}

TEST_CASE("k=0 plans are empty and change nothing") {
  const PlanResult protect = greedy_protect(chain3(), chain3_meters(), 0);
  CHECK(protect.steps.empty());
  CHECK(protect.final_measurements.size() == chain3_meters().size());
  const PlanResult pmu = greedy_pmu(chain3(), chain3_meters(), 0);
  CHECK(pmu.steps.empty());
  CHECK(pmu.final_measurements.size() == chain3_meters().size());
}

TEST_CASE("pmu planner finds the full-protection placement on the chain") {
  const PlanResult plan = greedy_pmu(chain3(), chain3_meters(), 1);
  REQUIRE(plan.steps.size() == 1);
  REQUIRE(plan.steps[0].chosen.has_value());
  CHECK(*plan.steps[0].chosen == 2);
  CHECK(plan.steps[0].infeasible_after);
  CHECK(optimal_attack(chain3(), plan.final_measurements).status == AttackStatus::Infeasible);
}

TEST_CASE("pmu steps after infeasibility are padded") {
  const PlanResult plan = greedy_pmu(chain3(), chain3_meters(), 3);
  REQUIRE(plan.steps.size() == 3);
  CHECK(plan.steps[0].infeasible_after);
  for (std::size_t i = 1; i < plan.steps.size(); ++i) {
    CHECK(plan.steps[i].infeasible_after);
    CHECK_FALSE(plan.steps[i].chosen.has_value());
  }
}

TEST_CASE("cycle pmu k=1 matches the exhaustive best placement") {
  GridTopology ring(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 1, 1.0}});
  const MeasurementSet ms = meters_for(ring, {1});

  // Exhaustive sweep over the 4 placements.
  long long best = -1;
  for (int bus = 1; bus <= 4; ++bus) {
    const AttackResult r = optimal_attack(ring, expand_pmu(ms, bus, true, ring));
    REQUIRE(r.status == AttackStatus::Optimal);
    best = std::max(best, r.cardinality);
  }

  const PlanResult plan = greedy_pmu(ring, ms, 1);
  REQUIRE(plan.steps.size() == 1);
  CHECK_FALSE(plan.steps[0].infeasible_after);
  CHECK(plan.steps[0].cardinality_after == best);
  CHECK(best == 3);  // PMU at bus 3 folds three meters into the cut
}

TEST_CASE("pruning: protecting outside the attack support never raises the cut") {
  CounterRng rng(311);
  for (int round = 0; round < 15; ++round) {
    const GridTopology topo = random_topology(rng, 7, 3);
    const MeasurementSet ms = random_meters(rng, topo, 0.7, 0.1);
    const AttackResult base = optimal_attack(topo, ms);
    if (base.status != AttackStatus::Optimal) continue;
    const auto support = as_set(base.attacked_measurements);
    for (int id : ms.unprotected_ids()) {
      if (support.count(id)) continue;
      const AttackResult hardened = optimal_attack(topo, ms.with_protection(id));
      REQUIRE(hardened.status == AttackStatus::Optimal);
      CHECK(hardened.cardinality == base.cardinality);
    }
  }
}

TEST_CASE("greedy k=1 equals the exhaustive best protection") {
  CounterRng rng(313);
  for (int round = 0; round < 12; ++round) {
    const GridTopology topo = random_topology(rng, 6 + static_cast<int>(rng.below(3)),
                                              static_cast<int>(rng.below(4)));
    const MeasurementSet ms = random_meters(rng, topo, 0.7, 0.1);
    if (optimal_attack(topo, ms).status != AttackStatus::Optimal) continue;
    const PlanResult plan = greedy_protect(topo, ms, 1);
    REQUIRE(plan.steps.size() == 1);
    const ProtectionOracleReport oracle = brute_force_protection(topo, ms, 1);
    CHECK(plan.steps[0].infeasible_after == oracle.best_infeasible);
    if (!oracle.best_infeasible) {
      CHECK(plan.steps[0].cardinality_after == oracle.best_value);
    }
  }
}

TEST_CASE("greedy k=2 never beats the exhaustive pair") {
  CounterRng rng(317);
  for (int round = 0; round < 8; ++round) {
    const GridTopology topo = random_topology(rng, 6, 3);
    const MeasurementSet ms = random_meters(rng, topo, 0.7, 0.1);
    if (optimal_attack(topo, ms).status != AttackStatus::Optimal) continue;
    const PlanResult plan = greedy_protect(topo, ms, 2);
    REQUIRE(plan.steps.size() == 2);
    const ProtectionOracleReport oracle = brute_force_protection(topo, ms, 2);
    if (plan.steps[1].infeasible_after) {
      CHECK(oracle.best_infeasible);  // greedy found full protection, so it exists
    } else if (!oracle.best_infeasible) {
      CHECK(plan.steps[1].cardinality_after <= oracle.best_value);
    }
  }
}

TEST_CASE("plans are monotone in the cut value") {
  CounterRng rng(331);
  for (int round = 0; round < 10; ++round) {
    const GridTopology topo = random_topology(rng, 7, 4);
    const MeasurementSet ms = random_meters(rng, topo, 0.8, 0.0);
    if (optimal_attack(topo, ms).status != AttackStatus::Optimal) continue;
    const PlanResult plan = greedy_protect(topo, ms, 3);
    long long prev = 0;
    for (const PlanStep& s : plan.steps) {
      if (s.infeasible_after) break;
      CHECK(s.cardinality_after >= prev);
      prev = s.cardinality_after;
    }
  }
}

TEST_CASE("full scan commits the same step-1 value as the pruned scan") {
  CounterRng rng(337);
  for (int round = 0; round < 10; ++round) {
    const GridTopology topo = random_topology(rng, 6, 3);
    const MeasurementSet ms = random_meters(rng, topo, 0.7, 0.1);
    if (optimal_attack(topo, ms).status != AttackStatus::Optimal) continue;
    const PlanResult pruned = greedy_protect(topo, ms, 1, false);
    const PlanResult full = greedy_protect(topo, ms, 1, true);
    REQUIRE(pruned.steps.size() == 1);
    REQUIRE(full.steps.size() == 1);
    CHECK(pruned.steps[0].infeasible_after == full.steps[0].infeasible_after);
    CHECK(pruned.steps[0].cardinality_after == full.steps[0].cardinality_after);
  }
}

TEST_CASE("pmu beats plain protection on fixtures where it covers the cut") {
  // A secure PMU protects a whole bundle of meters at once. On these two
  // fixtures the exhaustive check confirms the dominance (it does not hold
  // universally, so it is only pinned here).
  {
    const PlanResult protect = greedy_protect(chain3(), chain3_meters(), 1);
    const PlanResult pmu = greedy_pmu(chain3(), chain3_meters(), 1);
    CHECK(pmu.steps[0].infeasible_after);  // infeasible dominates any finite value
    CHECK_FALSE(protect.steps[0].infeasible_after);
  }
  {
    const PlanResult protect = greedy_protect(star(4), star_meters(4), 1);
    const PlanResult pmu = greedy_pmu(star(4), star_meters(4), 1);
    CHECK(pmu.steps[0].infeasible_after);  // PMU at the hub protects everything
    CHECK(protect.steps[0].cardinality_after == 1);
  }
}

TEST_CASE("oversized k is rejected") {
  CHECK_THROWS_AS(greedy_protect(chain3(), chain3_meters(), 99), ValidationError);
  CHECK_THROWS_AS(greedy_pmu(chain3(), chain3_meters(), 99), ValidationError);
}

TEST_CASE("plan json lists one object per step") {
  const PlanResult plan = greedy_pmu(chain3(), chain3_meters(), 2);
  const std::string json = plan_report_json(plan);
  CHECK(json.find("\"kind\": \"pmu\"") != std::string::npos);
  CHECK(json.find("\"infeasible_after\": true") != std::string::npos);
  CHECK(json.find("\"chosen\": null") != std::string::npos);
}
