#include "gridcut/simplex.hpp"

#include <cmath>
#include <vector>

#include "gridcut/errors.hpp"

namespace gridcut::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
  // rows x (total variables + 1); last column is the RHS.
  std::vector<std::vector<double>> a;
  std::vector<double> cost;  // reduced-cost row, last entry = -objective
  std::vector<int> basis;    // basic variable per row
  int rows = 0;
  int cols = 0;  // variable count (excluding RHS)

  double& at(int r, int c) { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  double& rhs(int r) { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)]; }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    for (int c = 0; c <= cols; ++c) at(pr, c) /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
    }
    const double f = cost[static_cast<std::size_t>(pc)];
    if (f != 0.0) {
      for (int c = 0; c <= cols; ++c) {
        cost[static_cast<std::size_t>(c)] -= f * at(pr, c);
      }
    }
    basis[static_cast<std::size_t>(pr)] = pc;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = lowest basic-variable index among ratio-test minimizers.
  // Returns Optimal / Unbounded; `allowed` restricts the entering columns.
  SolveStatus iterate(const std::vector<bool>& allowed, int& iterations, int max_iterations) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < cols; ++c) {
        if (!allowed[static_cast<std::size_t>(c)]) continue;
        if (cost[static_cast<std::size_t>(c)] < -kCostTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return SolveStatus::Optimal;

      int leave = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < rows; ++r) {
        const double coef = at(r, enter);
        if (coef <= kPivotTol) continue;
        const double ratio = rhs(r) / coef;
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return SolveStatus::Unbounded;
      pivot(leave, enter);
      if (++iterations > max_iterations) {
        throw Error("simplex exceeded iteration limit");
      }
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const int m = static_cast<int>(problem.A.rows());
  const int n = static_cast<int>(problem.A.cols());
  if (problem.b.size() != m || static_cast<int>(problem.relations.size()) != m ||
      problem.c.size() != n) {
    throw ValidationError("inconsistent LP dimensions");
  }

  // Count slack/surplus columns.
  int slack_count = 0;
  for (char rel : problem.relations) {
    if (rel == '<' || rel == '>') ++slack_count;
    else if (rel != '=') throw ValidationError("unknown LP relation");
  }

  const int total = n + slack_count + m;  // originals, slacks, artificials
  Tableau t;
  t.rows = m;
  t.cols = total;
  t.a.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(total + 1), 0.0));
  t.basis.assign(static_cast<std::size_t>(m), -1);

  int slack_at = n;
  for (int r = 0; r < m; ++r) {
    const double sign = problem.b(r) < 0.0 ? -1.0 : 1.0;  // normalize b >= 0
    for (int c = 0; c < n; ++c) t.at(r, c) = sign * problem.A(r, c);
    t.rhs(r) = sign * problem.b(r);
    const char rel = problem.relations[static_cast<std::size_t>(r)];
    if (rel == '<' || rel == '>') {
      const double dir = (rel == '<') ? 1.0 : -1.0;
      t.at(r, slack_at++) = sign * dir;
    }
    t.at(r, n + slack_count + r) = 1.0;  // artificial
    t.basis[static_cast<std::size_t>(r)] = n + slack_count + r;
  }

  // Phase 1: minimize the sum of artificials.
  t.cost.assign(static_cast<std::size_t>(total + 1), 0.0);
  for (int c = n + slack_count; c < total; ++c) t.cost[static_cast<std::size_t>(c)] = 1.0;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c <= total; ++c) {
      t.cost[static_cast<std::size_t>(c)] -= t.at(r, c);
    }
  }

  Solution solution;
  std::vector<bool> allowed(static_cast<std::size_t>(total), true);
  const int max_iterations = 4000 + 200 * (m + total);
  const SolveStatus phase1 = t.iterate(allowed, solution.iterations, max_iterations);
  const double phase1_obj = -t.cost[static_cast<std::size_t>(total)];
  if (phase1 == SolveStatus::Unbounded) throw Error("phase-1 LP cannot be unbounded");
  if (phase1_obj > kFeasTol) {
    solution.status = SolveStatus::Infeasible;
    return solution;
  }

  // Pivot lingering artificials out of the basis; a row with no usable pivot
  // is redundant and stays (its artificial is zero-valued).
  for (int r = 0; r < m; ++r) {
    if (t.basis[static_cast<std::size_t>(r)] < n + slack_count) continue;
    for (int c = 0; c < n + slack_count; ++c) {
      if (std::abs(t.at(r, c)) > kPivotTol) {
        t.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2: artificials frozen out.
  for (int c = n + slack_count; c < total; ++c) allowed[static_cast<std::size_t>(c)] = false;
  t.cost.assign(static_cast<std::size_t>(total + 1), 0.0);
  for (int c = 0; c < n; ++c) t.cost[static_cast<std::size_t>(c)] = problem.c(c);
  for (int r = 0; r < m; ++r) {
    const int b = t.basis[static_cast<std::size_t>(r)];
    const double cb = b < n ? problem.c(b) : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= total; ++c) {
      t.cost[static_cast<std::size_t>(c)] -= cb * t.at(r, c);
    }
  }

  const SolveStatus phase2 = t.iterate(allowed, solution.iterations, max_iterations);
  if (phase2 == SolveStatus::Unbounded) {
    solution.status = SolveStatus::Unbounded;
    return solution;
  }

  solution.status = SolveStatus::Optimal;
  solution.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    const int b = t.basis[static_cast<std::size_t>(r)];
    if (b < n) solution.x(b) = t.rhs(r);
  }
  solution.objective = problem.c.dot(solution.x);

  solution.min_reduced_cost = 0.0;
  for (int c = 0; c < total; ++c) {
    if (!allowed[static_cast<std::size_t>(c)]) continue;
    solution.min_reduced_cost = std::min(solution.min_reduced_cost, t.cost[static_cast<std::size_t>(c)]);
  }
  const Eigen::VectorXd residual = problem.A * solution.x - problem.b;
  for (int r = 0; r < m; ++r) {
    const char rel = problem.relations[static_cast<std::size_t>(r)];
    double violation = 0.0;
    if (rel == '=') violation = std::abs(residual(r));
    else if (rel == '<') violation = std::max(0.0, residual(r));
    else violation = std::max(0.0, -residual(r));
    solution.max_primal_residual = std::max(solution.max_primal_residual, violation);
  }
  return solution;
}

}  // namespace gridcut::lp
