#pragma once

#include <Eigen/Dense>
#include <string>

namespace gridcut::lp {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

/// minimize c'x  subject to  A x (relation) b,  x >= 0.
/// relations holds one character per row: '=', '<' (meaning <=) or '>' (>=).
struct Problem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::string relations;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  Eigen::VectorXd x;  // original variables only
  double objective = 0.0;
  // Optimality certificates from the final tableau.
  double max_primal_residual = 0.0;  // ||Ax - b||_inf over the original rows
  double min_reduced_cost = 0.0;     // most negative reduced cost at termination
  int iterations = 0;
};

/// Two-phase dense primal simplex with Bland's rule (lowest-index entering
/// variable, lowest-index tie break on the ratio test), which cannot cycle.
/// Deterministic for a fixed Problem.
Solution solve(const Problem& problem);

}  // namespace gridcut::lp
