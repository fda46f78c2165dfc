#include "gridcut/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "gridcut/errors.hpp"
#include "gridcut/l1_baseline.hpp"
#include "gridcut/oracle.hpp"
#include "gridcut/rng.hpp"

namespace gridcut {

namespace {

// Substream tags; part of the reproducibility contract.
constexpr std::uint64_t kStreamFlowMeters = 1;
constexpr std::uint64_t kStreamAngleMeters = 2;
constexpr std::uint64_t kStreamProtection = 3;
constexpr std::uint64_t kStreamPmu = 4;

int rounded_count(double fraction, int population) {
  return static_cast<int>(std::lround(fraction * population));
}

// Sorted prefix of a shuffled 0..population-1 permutation.
std::vector<int> sorted_sample(CounterRng& rng, int population, int count) {
  std::vector<int> perm = rng.permutation(population);
  perm.resize(static_cast<std::size_t>(count));
  std::sort(perm.begin(), perm.end());
  return perm;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(line);
  while (std::getline(in, token, sep)) out.push_back(token);
  return out;
}

AttackStatus status_from_string(const std::string& s) {
  if (s == "optimal") return AttackStatus::Optimal;
  if (s == "infeasible") return AttackStatus::Infeasible;
  if (s == "unobservable") return AttackStatus::Unobservable;
  throw ParseError("unknown status '" + s + "'");
}

}  // namespace

MeasurementSet randomize_scenario(const GridTopology& topo, const ScenarioConfig& config,
                                  int trial) {
  if (config.flow_coverage < 0.0 || config.flow_coverage > 1.0 || config.angle_coverage < 0.0 ||
      config.angle_coverage > 1.0 || config.protect_fraction < 0.0 ||
      config.protect_fraction > 1.0) {
    throw ValidationError("coverage and protection fractions must lie in [0, 1]");
  }
  const std::uint64_t meter_trial = config.fixed_meters ? 0 : static_cast<std::uint64_t>(trial);

  CounterRng flow_rng(
      CounterRng::derive_key({config.seed, kStreamFlowMeters, meter_trial}));
  CounterRng angle_rng(
      CounterRng::derive_key({config.seed, kStreamAngleMeters, meter_trial}));

  std::vector<Measurement> measurements;
  for (int line_id : sorted_sample(flow_rng, topo.line_count(),
                                   rounded_count(config.flow_coverage, topo.line_count()))) {
    measurements.push_back({MeasurementKind::LineFlow, line_id, false, std::nullopt});
  }
  for (int bus0 : sorted_sample(angle_rng, topo.bus_count(),
                                rounded_count(config.angle_coverage, topo.bus_count()))) {
    measurements.push_back({MeasurementKind::BusAngle, bus0 + 1, false, std::nullopt});
  }

  // Protections: prefix of one shuffled id permutation, so the protected set
  // at a larger fraction contains the set at a smaller one.
  const std::uint64_t protect_salt =
      config.independent_draws ? std::bit_cast<std::uint64_t>(config.protect_fraction) : 0;
  CounterRng protect_rng(CounterRng::derive_key(
      {config.seed, kStreamProtection, static_cast<std::uint64_t>(trial), protect_salt}));
  const int m = static_cast<int>(measurements.size());
  std::vector<int> perm = protect_rng.permutation(m);
  const int protect_count = rounded_count(config.protect_fraction, m);
  for (int i = 0; i < protect_count; ++i) {
    measurements[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].is_protected = true;
  }

  MeasurementSet ms(std::move(measurements), {});
  for (const PmuTag& pmu : config.explicit_pmus) {
    ms = expand_pmu(ms, pmu.bus, pmu.secure, topo);
  }
  if (config.random_pmu_count > 0) {
    if (config.random_pmu_count > topo.bus_count()) {
      throw ValidationError("more random PMUs than buses");
    }
    const std::uint64_t pmu_salt =
        config.independent_draws ? static_cast<std::uint64_t>(config.random_pmu_count) : 0;
    CounterRng pmu_rng(CounterRng::derive_key(
        {config.seed, kStreamPmu, static_cast<std::uint64_t>(trial), pmu_salt}));
    std::vector<int> buses = pmu_rng.permutation(topo.bus_count());
    for (int i = 0; i < config.random_pmu_count; ++i) {
      ms = expand_pmu(ms, buses[static_cast<std::size_t>(i)] + 1, config.random_pmu_secure, topo);
    }
  }
  ms.validate(topo);
  return ms;
}

std::string to_string(SweepParam param) {
  switch (param) {
    case SweepParam::ProtectFraction:
      return "protect_fraction";
    case SweepParam::PmuCount:
      return "pmu_count";
    case SweepParam::GreedyK:
      return "greedy_k";
  }
  return "unknown";
}

SweepParam sweep_param_from_string(const std::string& name) {
  if (name == "protect_fraction") return SweepParam::ProtectFraction;
  if (name == "pmu_count") return SweepParam::PmuCount;
  if (name == "greedy_k") return SweepParam::GreedyK;
  throw ValidationError("unknown sweep parameter '" + name + "'");
}

SweepEngine sweep_engine_from_string(const std::string& name) {
  if (name == "mincut") return SweepEngine::MinCut;
  if (name == "brute") return SweepEngine::BruteForce;
  if (name == "l1") return SweepEngine::L1;
  throw ValidationError("unknown engine '" + name + "'");
}

namespace {

TrialRecord score_scenario(const GridTopology& topo, const MeasurementSet& ms,
                           SweepEngine engine) {
  TrialRecord rec;
  switch (engine) {
    case SweepEngine::MinCut: {
      const AttackResult r = optimal_attack(topo, ms);
      rec.status = r.status;
      rec.cardinality = r.status == AttackStatus::Infeasible ? 0 : r.cardinality;
      break;
    }
    case SweepEngine::BruteForce: {
      const OracleReport r = brute_force_attack(topo, ms);
      if (!r.optimal_cardinality) {
        rec.status = AttackStatus::Infeasible;
        rec.cardinality = 0;
      } else {
        rec.cardinality = *r.optimal_cardinality;
        rec.status = rec.cardinality == 0 ? AttackStatus::Unobservable : AttackStatus::Optimal;
      }
      break;
    }
    case SweepEngine::L1: {
      const L1Result r = l1_attack(topo, ms);
      if (r.lp_status == LpStatus::Infeasible) {
        rec.status = AttackStatus::Infeasible;
        rec.cardinality = 0;
      } else {
        rec.status = AttackStatus::Optimal;
        rec.cardinality = r.cardinality;
      }
      break;
    }
  }
  return rec;
}

}  // namespace

SweepResult run_sweep(const GridTopology& topo, const ScenarioConfig& config,
                      const SweepSpec& spec, SweepEngine engine) {
  if (spec.values.empty()) throw ValidationError("sweep needs at least one value");
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (spec.param == SweepParam::GreedyK && engine != SweepEngine::MinCut) {
    throw ValidationError("greedy_k sweeps support only the mincut engine");
  }

  SweepResult result;
  result.param_name = to_string(spec.param);
  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());

  for (double value : values) {
    SweepRow row;
    row.sweep_value = value;
    row.trials = config.trials;
    long long feasible = 0;
    double sum = 0.0;
    for (int trial = 0; trial < config.trials; ++trial) {
      ScenarioConfig point = config;
      TrialRecord rec;
      switch (spec.param) {
        case SweepParam::ProtectFraction:
          point.protect_fraction = value;
          rec = score_scenario(topo, randomize_scenario(topo, point, trial), engine);
          break;
        case SweepParam::PmuCount:
          point.random_pmu_count = static_cast<int>(std::lround(value));
          rec = score_scenario(topo, randomize_scenario(topo, point, trial), engine);
          break;
        case SweepParam::GreedyK: {
          const int k = static_cast<int>(std::lround(value));
          const MeasurementSet base = randomize_scenario(topo, point, trial);
          const PlanResult plan = spec.greedy_kind == PlanKind::Measurement
                                      ? greedy_protect(topo, base, k)
                                      : greedy_pmu(topo, base, k);
          rec = score_scenario(topo, plan.final_measurements, SweepEngine::MinCut);
          break;
        }
      }
      rec.sweep_value = value;
      rec.trial = trial;
      result.raw.push_back(rec);
      if (rec.status == AttackStatus::Infeasible) {
        ++row.infeasible_count;
      } else {
        if (feasible == 0) {
          row.min = rec.cardinality;
          row.max = rec.cardinality;
        }
        row.min = std::min(row.min, rec.cardinality);
        row.max = std::max(row.max, rec.cardinality);
        sum += static_cast<double>(rec.cardinality);
        ++feasible;
      }
    }
    row.mean = feasible > 0 ? sum / static_cast<double>(feasible) : 0.0;
    result.rows.push_back(row);
  }
  return result;
}

std::string raw_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_param,sweep_value,trial,cardinality,status\n";
  for (const TrialRecord& r : result.raw) {
    out << result.param_name << ',' << format_double(r.sweep_value) << ',' << r.trial << ','
        << r.cardinality << ',' << to_string(r.status) << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_param,sweep_value,mean,min,max,infeasible_count,trials\n";
  for (const SweepRow& r : result.rows) {
    out << result.param_name << ',' << format_double(r.sweep_value) << ','
        << format_double(r.mean) << ',' << r.min << ',' << r.max << ',' << r.infeasible_count
        << ',' << r.trials << '\n';
  }
  return out.str();
}

SweepResult sweep_from_csv(const std::string& raw_text, const std::string& aggregate_text) {
  SweepResult result;
  std::istringstream raw_in(raw_text);
  std::string line;
  if (!std::getline(raw_in, line) || line != "sweep_param,sweep_value,trial,cardinality,status") {
    throw ParseError("bad raw CSV header");
  }
  while (std::getline(raw_in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw ParseError("bad raw CSV row: " + line);
    result.param_name = f[0];
    TrialRecord rec;
    rec.sweep_value = std::stod(f[1]);
    rec.trial = std::stoi(f[2]);
    rec.cardinality = std::stoll(f[3]);
    rec.status = status_from_string(f[4]);
    result.raw.push_back(rec);
  }

  std::istringstream agg_in(aggregate_text);
  if (!std::getline(agg_in, line) ||
      line != "sweep_param,sweep_value,mean,min,max,infeasible_count,trials") {
    throw ParseError("bad aggregate CSV header");
  }
  while (std::getline(agg_in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw ParseError("bad aggregate CSV row: " + line);
    result.param_name = f[0];
    SweepRow row;
    row.sweep_value = std::stod(f[1]);
    row.mean = std::stod(f[2]);
    row.min = std::stoll(f[3]);
    row.max = std::stoll(f[4]);
    row.infeasible_count = std::stoi(f[5]);
    row.trials = std::stoi(f[6]);
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace gridcut
