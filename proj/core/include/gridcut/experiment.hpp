#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridcut/attack_engine.hpp"
#include "gridcut/measurement.hpp"
#include "gridcut/planner.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

/// How a randomized scenario is drawn from a case. Everything is a pure
/// function of (seed, trial): meters, protections and PMU choices come from
/// separate counter-based substreams so one knob can change without
/// disturbing the others.
struct ScenarioConfig {
  double flow_coverage = 1.0;   // fraction of lines carrying a flow meter
  double angle_coverage = 0.6;  // fraction of buses carrying an angle meter
  double protect_fraction = 0.0;
  std::vector<PmuTag> explicit_pmus;
  int random_pmu_count = 0;
  bool random_pmu_secure = true;
  std::uint64_t seed = 0;
  int trials = 1;
  // Meters are redrawn per trial unless fixed_meters pins them to trial 0.
  bool fixed_meters = false;
  // Protections/PMU draws nest across sweep values (prefixes of one shuffled
  // permutation) unless independent_draws mixes the sweep value into the key.
  bool independent_draws = false;
};

/// Draws the meters for (config.seed, trial), protects round(f*m) of them
/// (a prefix of a shuffled id permutation, so larger fractions nest), then
/// applies explicit and random PMUs.
MeasurementSet randomize_scenario(const GridTopology& topo, const ScenarioConfig& config,
                                  int trial);

enum class SweepEngine { MinCut, BruteForce, L1 };
enum class SweepParam { ProtectFraction, PmuCount, GreedyK };

std::string to_string(SweepParam param);
SweepParam sweep_param_from_string(const std::string& name);
SweepEngine sweep_engine_from_string(const std::string& name);

struct SweepSpec {
  SweepParam param = SweepParam::ProtectFraction;
  std::vector<double> values;
  PlanKind greedy_kind = PlanKind::Measurement;  // used by GreedyK sweeps
};

struct TrialRecord {
  double sweep_value = 0.0;
  int trial = 0;
  long long cardinality = 0;  // 0 when infeasible
  AttackStatus status = AttackStatus::Optimal;
};

struct SweepRow {
  double sweep_value = 0.0;
  double mean = 0.0;  // over non-infeasible trials
  long long min = 0;
  long long max = 0;
  int infeasible_count = 0;
  int trials = 0;
};

struct SweepResult {
  std::string param_name;
  std::vector<TrialRecord> raw;   // sorted by (sweep_value, trial)
  std::vector<SweepRow> rows;     // sorted by sweep_value
};

/// Runs config.trials randomized scenarios per sweep value through the
/// chosen engine. GreedyK sweeps run the greedy planner for k steps on the
/// base scenario and score the hardened result.
SweepResult run_sweep(const GridTopology& topo, const ScenarioConfig& config,
                      const SweepSpec& spec, SweepEngine engine);

/// CSV schemas (floats with 6 significant digits):
///   raw:       sweep_param,sweep_value,trial,cardinality,status
///   aggregate: sweep_param,sweep_value,mean,min,max,infeasible_count,trials
std::string raw_csv(const SweepResult& result);
std::string aggregate_csv(const SweepResult& result);

/// Inverse of the emitters; reconstructs the result from both CSV texts.
SweepResult sweep_from_csv(const std::string& raw_text, const std::string& aggregate_text);

}  // namespace gridcut
