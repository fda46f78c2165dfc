#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

enum class AttackStatus {
  Optimal,       // minimum-cardinality hidden attack found
  Infeasible,    // protections admit only c = 0; no hidden attack exists
  Unobservable,  // graph disconnected: a whole component can shift for free
};

std::string to_string(AttackStatus status);

/// Minimum-cardinality hidden attack. a = H c exactly; attacked_measurements
/// is the support of a; c is 0-1 valued (the indicator of the cut side away
/// from the reference). For Unobservable, c marks the reference-free
/// component and a is all zero with cardinality 0.
struct AttackResult {
  AttackStatus status = AttackStatus::Infeasible;
  long long cardinality = 0;
  std::vector<int> attacked_measurements;  // ascending measurement ids
  Eigen::VectorXd c;                       // length n
  Eigen::VectorXd a;                       // length m
};

/// Builds the attack graph, applies protections, runs the global min-cut and
/// assembles the optimal attack vector.
AttackResult optimal_attack(const GridTopology& topo, const MeasurementSet& ms);

/// Attack report as a JSON string:
/// {status, cardinality, attacked_measurements, c, a}.
std::string attack_report_json(const AttackResult& result);

struct HiddenCheckReport {
  int trials = 0;
  double max_residual_diff = 0.0;
  double max_shift_error = 0.0;
};

/// Monte-carlo check that the attack is hidden: for each trial draws a true
/// state x (uniform per-angle on [-pi/6, pi/6]) and noise e ~ N(0, sigma^2),
/// forms z = Hx + e and asserts that attacking shifts the least-squares
/// estimate by exactly c while leaving the residual unchanged (within 1e-8).
/// Throws VerificationFailure on the first offending trial; requires
/// result.status == Optimal.
HiddenCheckReport verify_hidden(const GridTopology& topo, const MeasurementSet& ms,
                                const AttackResult& result, int trials, double noise_sigma,
                                std::uint64_t seed);

}  // namespace gridcut
