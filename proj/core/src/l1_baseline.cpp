#include "gridcut/l1_baseline.hpp"

#include <cmath>

#include "gridcut/errors.hpp"

namespace gridcut {

L1Result l1_attack(const GridTopology& topo, const MeasurementSet& ms, double theta1,
                   double theta2) {
  ms.validate(topo);
  const MeasurementMatrix mm = build_measurement_matrix(topo, ms);
  const int m = ms.size();
  const int n = topo.bus_count();

  // States in S_v are eliminated; free_states maps reduced column -> bus index.
  std::vector<int> free_states;
  for (int bus = 1; bus <= n; ++bus) {
    if (!ms.state_protected(bus)) free_states.push_back(bus - 1);
  }
  const int nr = static_cast<int>(free_states.size());
  const std::vector<int> protected_rows = ms.protected_ids();
  const int pr = static_cast<int>(protected_rows.size());

  // Variables: a+ (m) | a- (m) | c_reduced (nr).
  // Rows: a+ - a- - Hc = 0 (m), sum(c) >= theta1 (1), H^{S_m} c = 0 (pr).
  lp::Problem prob;
  const int vars = 2 * m + nr;
  prob.A = Eigen::MatrixXd::Zero(m + 1 + pr, vars);
  prob.b = Eigen::VectorXd::Zero(m + 1 + pr);
  prob.c = Eigen::VectorXd::Zero(vars);
  prob.relations.assign(static_cast<std::size_t>(m + 1 + pr), '=');

  for (int r = 0; r < m; ++r) {
    prob.A(r, r) = 1.0;
    prob.A(r, m + r) = -1.0;
    for (int j = 0; j < nr; ++j) {
      prob.A(r, 2 * m + j) = -mm.H(r, free_states[static_cast<std::size_t>(j)]);
    }
  }
  for (int j = 0; j < nr; ++j) prob.A(m, 2 * m + j) = 1.0;
  prob.b(m) = theta1;
  prob.relations[static_cast<std::size_t>(m)] = '>';
  for (int i = 0; i < pr; ++i) {
    const int row = protected_rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < nr; ++j) {
      prob.A(m + 1 + i, 2 * m + j) = mm.H(row, free_states[static_cast<std::size_t>(j)]);
    }
  }
  for (int i = 0; i < 2 * m; ++i) prob.c(i) = 1.0;

  L1Result result;
  result.lp = lp::solve(prob);
  result.raw_a = Eigen::VectorXd::Zero(m);
  result.relaxed_c = Eigen::VectorXd::Zero(n);
  if (result.lp.status != lp::SolveStatus::Optimal) {
    result.lp_status = LpStatus::Infeasible;
    return result;
  }

  result.lp_status = LpStatus::Optimal;
  for (int j = 0; j < nr; ++j) {
    result.relaxed_c(free_states[static_cast<std::size_t>(j)]) = result.lp.x(2 * m + j);
  }
  result.raw_a = mm.H * result.relaxed_c;
  for (int i = 0; i < m; ++i) {
    if (std::abs(result.raw_a(i)) > theta2) result.thresholded_support.push_back(i);
  }
  result.cardinality = static_cast<int>(result.thresholded_support.size());
  return result;
}

}  // namespace gridcut
