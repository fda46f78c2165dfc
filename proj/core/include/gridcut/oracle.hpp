#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

/// Result of the exhaustive 0-1 enumeration.
struct OracleReport {
  /// Empty when no non-zero c satisfies the protection constraints.
  std::optional<long long> optimal_cardinality;
  std::vector<std::vector<int>> witnesses;  // 0-1 vectors achieving the optimum, capped
  long long enumerated_count = 0;
};

inline constexpr int kWitnessCap = 100;

/// Enumerates every non-zero 0-1 vector c (binary counter order 1..2^n-1),
/// discards candidates violating c(i) = 0 on S_v or H^{S_m} c = 0, and
/// reports the minimum ||Hc||_0 with up to kWitnessCap witnesses. Works
/// directly on the measurement matrix, independent of the graph machinery.
/// Throws TooLargeError when n > max_n.
OracleReport brute_force_attack(const GridTopology& topo, const MeasurementSet& ms,
                                int max_n = 20);

/// Best size-k protection subset by exhaustive search.
struct ProtectionOracleReport {
  std::vector<int> best_subset;  // measurement ids, ascending
  bool best_infeasible = false;  // best subset leaves the attacker with no attack
  long long best_value = 0;      // resulting min-cut value when feasible
  long long evaluated_subsets = 0;
};

/// Evaluates the min-cut for every size-k subset of the unprotected
/// measurements (lexicographic order; first maximizer wins, infeasible beats
/// any finite value). Throws TooLargeError when C(|S_m^c|, k) > max_subsets.
ProtectionOracleReport brute_force_protection(const GridTopology& topo, const MeasurementSet& ms,
                                              int k, long long max_subsets = 1000000);

struct LeastSquaresResult {
  Eigen::VectorXd x_hat;
  double residual_norm = 0.0;
};

/// x_hat = argmin ||z - Hx||_2 by column-pivoted QR. Throws RankError when H
/// lacks full column rank (unobservable configuration).
LeastSquaresResult least_squares_estimate(const MeasurementMatrix& mm, const Eigen::VectorXd& z);

/// Protected rows of H stacked with a unit row per bus in S_v. Its rank is n
/// exactly when the protections admit no attack.
Eigen::MatrixXd protection_constraint_matrix(const GridTopology& topo, const MeasurementSet& ms);

int rank_of(const Eigen::MatrixXd& m);

}  // namespace gridcut
