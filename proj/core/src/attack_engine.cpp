#include "gridcut/attack_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <set>

#include "gridcut/attack_graph.hpp"
#include "gridcut/errors.hpp"
#include "gridcut/mincut.hpp"
#include "gridcut/oracle.hpp"
#include "gridcut/rng.hpp"
#include "json.hpp"

namespace gridcut {

namespace {

// Supernodes of the component with the smallest supernode id among components
// not containing the reference.
std::vector<int> reference_free_component(const AttackGraph& g) {
  std::map<int, std::vector<int>> adj;
  for (const AttackEdge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  const int ref_super = g.supernode_of()[static_cast<std::size_t>(g.reference_node())];
  std::set<int> visited;
  for (int start : g.supernodes()) {
    if (visited.count(start)) continue;
    std::vector<int> component;
    std::queue<int> queue;
    queue.push(start);
    visited.insert(start);
    bool has_ref = false;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      component.push_back(v);
      if (v == ref_super) has_ref = true;
      for (int u : adj[v]) {
        if (!visited.count(u)) {
          visited.insert(u);
          queue.push(u);
        }
      }
    }
    if (!has_ref) return component;  // supernodes scanned ascending
  }
  throw Error("disconnected graph has no reference-free component");
}

std::vector<int> support_of(const Eigen::VectorXd& a) {
  std::vector<int> ids;
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != 0.0) ids.push_back(i);
  }
  return ids;
}

}  // namespace

std::string to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::Optimal:
      return "optimal";
    case AttackStatus::Infeasible:
      return "infeasible";
    case AttackStatus::Unobservable:
      return "unobservable";
  }
  return "unknown";
}

AttackResult optimal_attack(const GridTopology& topo, const MeasurementSet& ms) {
  const MeasurementMatrix mm = build_measurement_matrix(topo, ms);
  const AttackGraph g = apply_protections(build_attack_graph(topo, ms), ms);

  AttackResult result;
  result.c = Eigen::VectorXd::Zero(topo.bus_count());
  result.a = Eigen::VectorXd::Zero(ms.size());

  if (g.infeasible()) {
    result.status = AttackStatus::Infeasible;
    return result;
  }

  if (!g.connected()) {
    result.status = AttackStatus::Unobservable;
    const std::vector<int> component = reference_free_component(g);
    const std::set<int> in_component(component.begin(), component.end());
    for (int bus = 0; bus < topo.bus_count(); ++bus) {
      const int s = g.supernode_of()[static_cast<std::size_t>(bus)];
      if (in_component.count(s)) result.c(bus) = 1.0;
    }
    result.a = mm.H * result.c;
    if (result.a.cwiseAbs().maxCoeff() != 0.0) {
      throw Error("unobservable component produced a non-zero attack vector");
    }
    result.cardinality = 0;
    return result;
  }

  const CutResult cut = global_min_cut(g);
  const std::vector<int> labels = label_sides(g, cut);
  for (int bus = 0; bus < topo.bus_count(); ++bus) {
    result.c(bus) = labels[static_cast<std::size_t>(bus)];
  }
  result.a = mm.H * result.c;
  result.attacked_measurements = support_of(result.a);
  result.cardinality = cut.value;
  result.status = AttackStatus::Optimal;
  if (static_cast<long long>(result.attacked_measurements.size()) != cut.value) {
    throw Error("attack support size " + std::to_string(result.attacked_measurements.size()) +
                " does not match cut value " + std::to_string(cut.value));
  }
  return result;
}

std::string attack_report_json(const AttackResult& result) {
  nlohmann::json j;
  j["status"] = to_string(result.status);
  j["cardinality"] = result.cardinality;
  j["attacked_measurements"] = result.attacked_measurements;
  std::vector<int> c(static_cast<std::size_t>(result.c.size()));
  for (int i = 0; i < result.c.size(); ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(result.c(i));
  }
  j["c"] = c;
  std::vector<double> a(static_cast<std::size_t>(result.a.size()));
  for (int i = 0; i < result.a.size(); ++i) a[static_cast<std::size_t>(i)] = result.a(i);
  j["a"] = a;
  return j.dump(2) + "\n";
}

HiddenCheckReport verify_hidden(const GridTopology& topo, const MeasurementSet& ms,
                                const AttackResult& result, int trials, double noise_sigma,
                                std::uint64_t seed) {
  if (result.status != AttackStatus::Optimal) {
    throw ValidationError("verify_hidden needs an Optimal attack result");
  }
  constexpr double kTol = 1e-8;
  const MeasurementMatrix mm = build_measurement_matrix(topo, ms);
  CounterRng rng(CounterRng::derive_key({seed, 0x76657269ULL}));  // "veri"

  HiddenCheckReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(topo.bus_count());
    for (int i = 0; i < x.size(); ++i) {
      x(i) = rng.uniform(-std::numbers::pi / 6.0, std::numbers::pi / 6.0);
    }
    Eigen::VectorXd e(ms.size());
    for (int i = 0; i < e.size(); ++i) e(i) = noise_sigma * rng.normal();

    const Eigen::VectorXd z = mm.H * x + e;
    const LeastSquaresResult clean = least_squares_estimate(mm, z);
    const LeastSquaresResult attacked = least_squares_estimate(mm, z + result.a);

    const double residual_diff = std::abs(attacked.residual_norm - clean.residual_norm);
    const double shift_error =
        (attacked.x_hat - clean.x_hat - result.c).cwiseAbs().maxCoeff();
    report.max_residual_diff = std::max(report.max_residual_diff, residual_diff);
    report.max_shift_error = std::max(report.max_shift_error, shift_error);
    if (residual_diff > kTol || shift_error > kTol) {
      throw VerificationFailure("trial " + std::to_string(t) + ": residual diff " +
                                std::to_string(residual_diff) + ", estimate shift error " +
                                std::to_string(shift_error));
    }
  }
  return report;
}

}  // namespace gridcut
