// gridcut: minimum-cardinality hidden attacks on DC state estimation and
// countermeasure planning. Subcommands: attack, protect, pmu, verify,
// experiment. Exit codes: 0 success, 2 validation/parse error,
// 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridcut/attack_engine.hpp"
#include "gridcut/attack_graph.hpp"
#include "gridcut/case_io.hpp"
#include "gridcut/errors.hpp"
#include "gridcut/experiment.hpp"
#include "gridcut/l1_baseline.hpp"
#include "gridcut/oracle.hpp"
#include "gridcut/planner.hpp"

namespace {

using namespace gridcut;

struct GlobalOptions {
  std::string case_path;
  std::string case_format = "auto";
  std::string scenario_path;
  std::string save_scenario_path;
  bool dump_graph = false;

  double flow_coverage = 1.0;
  double angle_coverage = 0.6;
  double protect_fraction = 0.0;
  int pmu_count = 0;
  bool pmu_insecure = false;
  std::vector<int> pmu_buses;
  std::uint64_t seed = 0;
  int trial = 0;
  bool fixed_meters = false;
  bool independent_draws = false;
};

void add_global_options(CLI::App& app, GlobalOptions& g) {
  app.add_option("--case", g.case_path, "Case file (.m MATPOWER subset or .json)");
  app.add_option("--case-format", g.case_format, "auto|matpower|json")
      ->check(CLI::IsMember({"auto", "matpower", "json"}));
  app.add_option("--scenario", g.scenario_path, "Scenario JSON (topology + measurements)");
  app.add_option("--save-scenario", g.save_scenario_path, "Write the resolved scenario JSON here");
  app.add_flag("--dump-graph", g.dump_graph, "Print the contracted attack graph as DOT to stderr");

  app.add_option("--flow-coverage", g.flow_coverage, "Fraction of lines with flow meters");
  app.add_option("--angle-coverage", g.angle_coverage, "Fraction of buses with angle meters");
  app.add_option("--protect-fraction", g.protect_fraction, "Fraction of meters protected");
  app.add_option("--pmu-count", g.pmu_count, "Random secure PMUs to place");
  app.add_flag("--pmu-insecure", g.pmu_insecure, "Random/explicit PMUs are insecure");
  app.add_option("--pmu-bus", g.pmu_buses, "Explicit PMU bus (repeatable)");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--trial", g.trial, "Trial index for scenario randomization");
  app.add_flag("--fixed-meters", g.fixed_meters, "Draw meters once, not per trial");
  app.add_flag("--independent-draws", g.independent_draws,
               "Redraw protections/PMUs per sweep value instead of nesting");
}

ScenarioConfig config_from(const GlobalOptions& g) {
  ScenarioConfig config;
  config.flow_coverage = g.flow_coverage;
  config.angle_coverage = g.angle_coverage;
  config.protect_fraction = g.protect_fraction;
  config.random_pmu_count = g.pmu_count;
  config.random_pmu_secure = !g.pmu_insecure;
  for (int bus : g.pmu_buses) config.explicit_pmus.push_back({bus, !g.pmu_insecure});
  config.seed = g.seed;
  config.fixed_meters = g.fixed_meters;
  config.independent_draws = g.independent_draws;
  return config;
}

GridTopology load_topology(const GlobalOptions& g) {
  CaseFormat format;
  if (g.case_format == "matpower") {
    format = CaseFormat::MatpowerCase;
  } else if (g.case_format == "json") {
    format = CaseFormat::NativeJson;
  } else {
    format = detect_case_format(g.case_path);
  }
  return load_case(g.case_path, format).topology;
}

Scenario resolve_scenario(const GlobalOptions& g) {
  if (!g.scenario_path.empty()) return load_scenario(g.scenario_path);
  if (g.case_path.empty()) {
    throw ValidationError("need --scenario or --case to define a scenario");
  }
  GridTopology topo = load_topology(g);
  const ScenarioConfig config = config_from(g);
  MeasurementSet ms = randomize_scenario(topo, config, g.trial);
  return {std::move(topo), std::move(ms), g.seed};
}

void post_resolve(const GlobalOptions& g, const Scenario& s) {
  if (!g.save_scenario_path.empty()) save_scenario(s, g.save_scenario_path);
  if (g.dump_graph) {
    const AttackGraph graph =
        apply_protections(build_attack_graph(s.topology, s.measurements), s.measurements);
    std::cerr << graph.to_dot();
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + out_path);
  out << text;
}

std::string aggregate_path_for(const std::string& raw_path) {
  const auto dot = raw_path.rfind('.');
  const auto slash = raw_path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return raw_path + ".agg";
  }
  return raw_path.substr(0, dot) + ".agg" + raw_path.substr(dot);
}

int run_attack(const GlobalOptions& g, const std::string& out_path, int verify_trials,
               double noise_sigma) {
  const Scenario s = resolve_scenario(g);
  post_resolve(g, s);
  const AttackResult result = optimal_attack(s.topology, s.measurements);
  emit(attack_report_json(result), out_path);
  if (verify_trials > 0) {
    if (result.status != AttackStatus::Optimal) {
      std::cerr << "verify: skipped (status " << to_string(result.status) << ")\n";
      return 0;
    }
    const std::uint64_t seed = s.seed.value_or(g.seed);
    const HiddenCheckReport rep =
        verify_hidden(s.topology, s.measurements, result, verify_trials, noise_sigma, seed);
    std::cerr << "verify: " << rep.trials << " trials, max residual diff "
              << rep.max_residual_diff << ", max shift error " << rep.max_shift_error << "\n";
  }
  return 0;
}

int run_plan(const GlobalOptions& g, PlanKind kind, int k, bool full_scan,
             const std::string& out_path) {
  const Scenario s = resolve_scenario(g);
  post_resolve(g, s);
  const PlanResult plan = kind == PlanKind::Measurement
                              ? greedy_protect(s.topology, s.measurements, k, full_scan)
                              : greedy_pmu(s.topology, s.measurements, k);
  emit(plan_report_json(plan), out_path);
  return 0;
}

int run_verify(const GlobalOptions& g, int max_n, int trials) {
  GridTopology topo = g.scenario_path.empty() ? load_topology(g)
                                              : load_scenario(g.scenario_path).topology;
  const ScenarioConfig config = config_from(g);
  std::printf("%-6s %-8s %-8s %-8s %s\n", "trial", "engine", "oracle", "l1", "agree");
  bool all_agree = true;
  for (int trial = 0; trial < trials; ++trial) {
    MeasurementSet ms = g.scenario_path.empty()
                            ? randomize_scenario(topo, config, trial)
                            : load_scenario(g.scenario_path).measurements;
    const AttackResult engine = optimal_attack(topo, ms);
    const OracleReport oracle = brute_force_attack(topo, ms, max_n);
    const L1Result l1 = l1_attack(topo, ms);

    const std::string engine_text = engine.status == AttackStatus::Infeasible
                                        ? "inf"
                                        : std::to_string(engine.cardinality);
    const std::string oracle_text =
        oracle.optimal_cardinality ? std::to_string(*oracle.optimal_cardinality) : "inf";
    const std::string l1_text =
        l1.lp_status == LpStatus::Infeasible ? "inf" : std::to_string(l1.cardinality);

    bool agree;
    if (engine.status == AttackStatus::Infeasible) {
      agree = !oracle.optimal_cardinality && l1.lp_status == LpStatus::Infeasible;
    } else {
      agree = oracle.optimal_cardinality && engine.cardinality == *oracle.optimal_cardinality &&
              l1.lp_status == LpStatus::Optimal && l1.cardinality >= engine.cardinality;
    }
    all_agree = all_agree && agree;
    std::printf("%-6d %-8s %-8s %-8s %s\n", trial, engine_text.c_str(), oracle_text.c_str(),
                l1_text.c_str(), agree ? "yes" : "NO");
  }
  if (!all_agree) throw VerificationFailure("engine/oracle/l1 disagreement");
  return 0;
}

int run_experiment(const GlobalOptions& g, const std::string& sweep_name,
                   const std::vector<double>& values, int trials, const std::string& engine_name,
                   const std::string& out_path, const std::string& greedy_kind) {
  if (g.case_path.empty()) throw ValidationError("experiment needs --case");
  GridTopology topo = load_topology(g);
  ScenarioConfig config = config_from(g);
  config.trials = trials;

  SweepSpec spec;
  spec.param = sweep_param_from_string(sweep_name);
  spec.values = values;
  spec.greedy_kind = greedy_kind == "pmu" ? PlanKind::Pmu : PlanKind::Measurement;

  const SweepResult result = run_sweep(topo, config, spec, sweep_engine_from_string(engine_name));
  emit(raw_csv(result), out_path);
  const std::string agg_path = out_path.empty() ? "" : aggregate_path_for(out_path);
  if (agg_path.empty()) {
    std::cout << aggregate_csv(result);
  } else {
    emit(aggregate_csv(result), agg_path);
    std::cerr << "wrote " << out_path << " and " << agg_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-attack analysis for DC power-system state estimation"};
  app.require_subcommand(1);

  GlobalOptions g;
  add_global_options(app, g);

  std::string out_path;
  int verify_trials = 0;
  double noise_sigma = 0.01;
  CLI::App* attack = app.add_subcommand("attack", "Compute the minimum hidden attack");
  attack->fallthrough();
  attack->add_option("--out", out_path, "Write the attack report JSON here");
  attack->add_option("--verify-trials", verify_trials,
                     "Monte-carlo hidden-attack check trials (0 = skip)");
  attack->add_option("--noise-sigma", noise_sigma, "Measurement noise sigma for the check");

  int protect_k = 1;
  bool full_scan = false;
  std::string protect_out;
  CLI::App* protect = app.add_subcommand("protect", "Greedy additional-measurement protection");
  protect->fallthrough();
  protect->add_option("--k", protect_k, "Measurements to protect")->required();
  protect->add_flag("--full-scan", full_scan, "Scan all unprotected measurements, not the cut");
  protect->add_option("--out", protect_out, "Write the plan JSON here");

  int pmu_k = 1;
  std::string pmu_out;
  CLI::App* pmu = app.add_subcommand("pmu", "Greedy secure-PMU placement");
  pmu->fallthrough();
  pmu->add_option("--k", pmu_k, "PMUs to place")->required();
  pmu->add_option("--out", pmu_out, "Write the plan JSON here");

  int max_n = 20;
  int verify_scenarios = 1;
  CLI::App* verify = app.add_subcommand("verify", "Compare engine, brute-force oracle and l1");
  verify->fallthrough();
  verify->add_option("--max-n", max_n, "Bus-count cap for the exhaustive oracle");
  verify->add_option("--trials", verify_scenarios, "Randomized scenarios to check");

  std::string sweep_name;
  std::vector<double> sweep_values;
  int sweep_trials = 10;
  std::string engine_name = "mincut";
  std::string sweep_out;
  std::string greedy_kind = "measurement";
  CLI::App* experiment = app.add_subcommand("experiment", "Randomized sweeps to CSV");
  experiment->fallthrough();
  experiment->add_option("--sweep", sweep_name, "protect_fraction|pmu_count|greedy_k")
      ->required();
  experiment->add_option("--values", sweep_values, "Sweep values")
      ->required()
      ->delimiter(',');
  experiment->add_option("--trials", sweep_trials, "Trials per sweep value");
  experiment->add_option("--engine", engine_name, "mincut|brute|l1")
      ->check(CLI::IsMember({"mincut", "brute", "l1"}));
  experiment->add_option("--out", sweep_out, "Raw CSV path (aggregate goes to *.agg.csv)");
  experiment->add_option("--greedy-kind", greedy_kind, "measurement|pmu (greedy_k sweeps)")
      ->check(CLI::IsMember({"measurement", "pmu"}));

  try {
    app.parse(argc, argv);
    if (attack->parsed()) return run_attack(g, out_path, verify_trials, noise_sigma);
    if (protect->parsed()) {
      return run_plan(g, PlanKind::Measurement, protect_k, full_scan, protect_out);
    }
    if (pmu->parsed()) return run_plan(g, PlanKind::Pmu, pmu_k, false, pmu_out);
    if (verify->parsed()) return run_verify(g, max_n, verify_scenarios);
    if (experiment->parsed()) {
      return run_experiment(g, sweep_name, sweep_values, sweep_trials, engine_name, sweep_out,
                            greedy_kind);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
