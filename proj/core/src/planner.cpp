#include "gridcut/planner.hpp"

#include <set>

#include "gridcut/attack_engine.hpp"
#include "gridcut/errors.hpp"
#include "json.hpp"

namespace gridcut {

namespace {

// Attacker's view of a scenario; infeasible beats any finite cut value.
struct Outcome {
  bool infeasible = false;
  long long value = 0;
};

Outcome evaluate(const GridTopology& topo, const MeasurementSet& ms) {
  const AttackResult r = optimal_attack(topo, ms);
  if (r.status == AttackStatus::Infeasible) return {true, 0};
  return {false, r.cardinality};
}

bool improves(const Outcome& candidate, const Outcome& incumbent) {
  if (candidate.infeasible != incumbent.infeasible) return candidate.infeasible;
  return !candidate.infeasible && candidate.value > incumbent.value;
}

void pad_remaining(std::vector<PlanStep>& steps, PlanKind kind, int from_step, int k,
                   bool infeasible) {
  for (int s = from_step; s <= k; ++s) {
    steps.push_back({s, kind, std::nullopt, 0, infeasible});
  }
}

}  // namespace

PlanResult greedy_protect(const GridTopology& topo, const MeasurementSet& ms, int k,
                          bool full_scan) {
  ms.validate(topo);
  if (k < 0 || k > static_cast<int>(ms.unprotected_ids().size())) {
    throw ValidationError("cannot protect " + std::to_string(k) + " additional measurements");
  }

  PlanResult plan{{}, ms};
  MeasurementSet current = ms;
  for (int step = 1; step <= k; ++step) {
    const AttackResult base = optimal_attack(topo, current);
    if (base.status == AttackStatus::Infeasible) {
      pad_remaining(plan.steps, PlanKind::Measurement, step, k, true);
      break;
    }
    const std::vector<int> candidates =
        full_scan ? current.unprotected_ids() : base.attacked_measurements;
    if (candidates.empty()) {
      // Unobservable scenario: protection cannot change the free attack.
      pad_remaining(plan.steps, PlanKind::Measurement, step, k, false);
      break;
    }

    Outcome best;
    int chosen = -1;
    for (int id : candidates) {
      const Outcome out = evaluate(topo, current.with_protection(id));
      if (chosen < 0 || improves(out, best)) {
        best = out;
        chosen = id;
      }
    }
    current = current.with_protection(chosen);
    plan.steps.push_back({step, PlanKind::Measurement, chosen, best.infeasible ? 0 : best.value,
                          best.infeasible});
    if (best.infeasible) {
      pad_remaining(plan.steps, PlanKind::Measurement, step + 1, k, true);
      break;
    }
  }
  plan.final_measurements = current;
  return plan;
}

PlanResult greedy_pmu(const GridTopology& topo, const MeasurementSet& ms, int k) {
  ms.validate(topo);
  if (k < 0 || k > topo.bus_count()) {
    throw ValidationError("cannot place " + std::to_string(k) + " PMUs on " +
                          std::to_string(topo.bus_count()) + " buses");
  }

  PlanResult plan{{}, ms};
  MeasurementSet current = ms;
  std::set<int> placed;
  for (int step = 1; step <= k; ++step) {
    const AttackResult base = optimal_attack(topo, current);
    if (base.status == AttackStatus::Infeasible) {
      pad_remaining(plan.steps, PlanKind::Pmu, step, k, true);
      break;
    }

    Outcome best;
    int chosen = -1;
    for (int bus = 1; bus <= topo.bus_count(); ++bus) {
      if (placed.count(bus)) continue;
      const Outcome out = evaluate(topo, expand_pmu(current, bus, true, topo));
      if (chosen < 0 || improves(out, best)) {
        best = out;
        chosen = bus;
      }
    }
    current = expand_pmu(current, chosen, true, topo);
    placed.insert(chosen);
    plan.steps.push_back({step, PlanKind::Pmu, chosen, best.infeasible ? 0 : best.value,
                          best.infeasible});
    if (best.infeasible) {
      pad_remaining(plan.steps, PlanKind::Pmu, step + 1, k, true);
      break;
    }
  }
  plan.final_measurements = current;
  return plan;
}

std::string plan_report_json(const PlanResult& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const PlanStep& s : plan.steps) {
    nlohmann::json j;
    j["step"] = s.step;
    j["kind"] = s.kind == PlanKind::Measurement ? "measurement" : "pmu";
    if (s.chosen) {
      j["chosen"] = *s.chosen;
    } else {
      j["chosen"] = nullptr;
    }
    j["cardinality_after"] = s.cardinality_after;
    j["infeasible_after"] = s.infeasible_after;
    steps.push_back(j);
  }
  return steps.dump(2) + "\n";
}

}  // namespace gridcut
