#include "gridcut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gridcut/attack_engine.hpp"
#include "gridcut/errors.hpp"

namespace gridcut {

namespace {

// Sparse view of one H row: (column, value) pairs. With 0-1 c every dot
// product is exactly 0.0 or a sum of +-B terms, so support tests are exact.
struct SparseRow {
  std::vector<std::pair<int, double>> entries;
  double dot(std::uint32_t mask) const {
    double acc = 0.0;
    for (const auto& [col, val] : entries) {
      if (mask & (1u << col)) acc += val;
    }
    return acc;
  }
};

std::vector<SparseRow> sparse_rows(const Eigen::MatrixXd& H) {
  std::vector<SparseRow> rows(static_cast<std::size_t>(H.rows()));
  for (int r = 0; r < H.rows(); ++r) {
    for (int c = 0; c < H.cols(); ++c) {
      if (H(r, c) != 0.0) rows[static_cast<std::size_t>(r)].entries.emplace_back(c, H(r, c));
    }
  }
  return rows;
}

long long binomial_capped(long long n, long long k, long long cap) {
  if (k < 0 || k > n) return 0;
  long long result = 1;
  for (long long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace

OracleReport brute_force_attack(const GridTopology& topo, const MeasurementSet& ms, int max_n) {
  ms.validate(topo);
  const int n = topo.bus_count();
  if (n > max_n || n > 30) {
    throw TooLargeError("brute force limited to " + std::to_string(std::min(max_n, 30)) +
                        " buses, got " + std::to_string(n));
  }
  const MeasurementMatrix mm = build_measurement_matrix(topo, ms);
  const auto rows = sparse_rows(mm.H);

  std::uint32_t sv_mask = 0;
  for (int bus : ms.protected_states()) sv_mask |= 1u << (bus - 1);
  const std::vector<int> protected_rows = ms.protected_ids();

  OracleReport report;
  long long best = -1;
  const std::uint32_t end = 1u << n;
  for (std::uint32_t mask = 1; mask < end; ++mask) {
    ++report.enumerated_count;
    if (mask & sv_mask) continue;
    bool feasible = true;
    for (int r : protected_rows) {
      if (rows[static_cast<std::size_t>(r)].dot(mask) != 0.0) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    long long nonzeros = 0;
    for (const SparseRow& row : rows) {
      if (row.dot(mask) != 0.0) ++nonzeros;
    }
    if (best < 0 || nonzeros < best) {
      best = nonzeros;
      report.witnesses.clear();
    }
    if (nonzeros == best && static_cast<int>(report.witnesses.size()) < kWitnessCap) {
      std::vector<int> witness(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) witness[static_cast<std::size_t>(i)] = 1;
      }
      report.witnesses.push_back(std::move(witness));
    }
  }
  if (best >= 0) report.optimal_cardinality = best;
  return report;
}

ProtectionOracleReport brute_force_protection(const GridTopology& topo, const MeasurementSet& ms,
                                              int k, long long max_subsets) {
  ms.validate(topo);
  const std::vector<int> candidates = ms.unprotected_ids();
  const int u = static_cast<int>(candidates.size());
  if (k < 0 || k > u) {
    throw ValidationError("protection subset size " + std::to_string(k) + " out of range");
  }
  if (binomial_capped(u, k, max_subsets) > max_subsets) {
    throw TooLargeError("C(" + std::to_string(u) + "," + std::to_string(k) +
                        ") protection subsets exceed the enumeration limit");
  }

  ProtectionOracleReport report;
  auto evaluate = [&](const std::vector<int>& subset) {
    MeasurementSet protected_ms = ms;
    for (int id : subset) protected_ms = protected_ms.with_protection(id);
    const AttackResult r = optimal_attack(topo, protected_ms);
    ++report.evaluated_subsets;
    const bool infeasible = r.status == AttackStatus::Infeasible;
    const long long value = infeasible ? 0 : r.cardinality;
    const bool better = report.evaluated_subsets == 1 ||
                        (infeasible && !report.best_infeasible) ||
                        (infeasible == report.best_infeasible && !infeasible &&
                         value > report.best_value);
    if (better) {
      report.best_subset = subset;
      report.best_infeasible = infeasible;
      report.best_value = value;
    }
  };

  std::vector<int> pick(static_cast<std::size_t>(k));
  // Lexicographic k-combinations over candidate positions.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k == 0) {
    evaluate({});
    return report;
  }
  while (true) {
    for (int i = 0; i < k; ++i) {
      pick[static_cast<std::size_t>(i)] = candidates[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    evaluate(pick);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == u - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return report;
}

LeastSquaresResult least_squares_estimate(const MeasurementMatrix& mm, const Eigen::VectorXd& z) {
  if (z.size() != mm.H.rows()) {
    throw ValidationError("measurement vector length does not match H");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mm.H);
  if (qr.rank() < mm.H.cols()) {
    throw RankError("measurement matrix lacks full column rank (rank " +
                    std::to_string(qr.rank()) + " of " + std::to_string(mm.H.cols()) + ")");
  }
  LeastSquaresResult result;
  result.x_hat = qr.solve(z);
  result.residual_norm = (z - mm.H * result.x_hat).norm();
  return result;
}

Eigen::MatrixXd protection_constraint_matrix(const GridTopology& topo, const MeasurementSet& ms) {
  const MeasurementMatrix mm = build_measurement_matrix(topo, ms);
  const std::vector<int> rows = ms.protected_ids();
  const std::vector<int>& states = ms.protected_states();
  Eigen::MatrixXd m(static_cast<int>(rows.size() + states.size()), topo.bus_count());
  m.setZero();
  int r = 0;
  for (int id : rows) m.row(r++) = mm.H.row(id);
  for (int bus : states) m(r++, bus - 1) = 1.0;
  return m;
}

int rank_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(m).rank());
}

}  // namespace gridcut
