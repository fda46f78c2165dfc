#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/simplex.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

enum class LpStatus { Optimal, Infeasible };

/// Thresholded l1-relaxation baseline. Overcounts the true optimum in
/// general; the sandwich min-cut <= cardinality always holds.
struct L1Result {
  Eigen::VectorXd raw_a;               // LP-optimal attack vector, length m
  Eigen::VectorXd relaxed_c;           // LP-optimal state shift, length n
  std::vector<int> thresholded_support;  // {i : |raw_a(i)| > theta2}
  int cardinality = 0;
  LpStatus lp_status = LpStatus::Infeasible;
  lp::Solution lp;                     // solver diagnostics
};

/// Solves  min ||a||_1  s.t.  a = Hc, c >= 0, 1'c >= theta1,
/// H^{S_m} c = 0, c(i) = 0 on S_v  as a dense LP (a split into a+ - a-),
/// then thresholds |a| at theta2. The strict 1'c > theta1 of the source
/// formulation is closed to >= for a closed feasible set.
L1Result l1_attack(const GridTopology& topo, const MeasurementSet& ms, double theta1 = 1.0,
                   double theta2 = 1e-3);

}  // namespace gridcut
