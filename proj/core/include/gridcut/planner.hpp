#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

enum class PlanKind { Measurement, Pmu };

/// One committed greedy choice. Steps after full protection is reached are
/// padded: chosen is empty, infeasible_after is true and cardinality_after
/// is 0 (the attacker has no attack, i.e. the value is effectively infinite).
struct PlanStep {
  int step = 0;  // 1-based
  PlanKind kind = PlanKind::Measurement;
  std::optional<int> chosen;  // measurement id (Measurement) or bus id (Pmu)
  long long cardinality_after = 0;
  bool infeasible_after = false;
};

struct PlanResult {
  std::vector<PlanStep> steps;
  MeasurementSet final_measurements;
};

/// Greedy choice of k additional measurements to protect, maximizing the
/// attacker's min-cut. Candidates per step are exactly the measurements in
/// the current optimal attack's support (protecting anything else cannot
/// raise the cut); full_scan widens the sweep to every unprotected
/// measurement. Strict improvement with lowest-id-first scanning, so the
/// first maximizer wins. Reaching attacker infeasibility early pads the
/// remaining steps instead of failing.
PlanResult greedy_protect(const GridTopology& topo, const MeasurementSet& ms, int k,
                          bool full_scan = false);

/// Greedy placement of k secure PMUs; candidates are all buses not yet
/// holding a planner-placed PMU. Same tie-breaking and padding rules.
PlanResult greedy_pmu(const GridTopology& topo, const MeasurementSet& ms, int k);

/// Plan report as a JSON string: array of
/// {step, kind, chosen, cardinality_after, infeasible_after}.
std::string plan_report_json(const PlanResult& plan);

}  // namespace gridcut
