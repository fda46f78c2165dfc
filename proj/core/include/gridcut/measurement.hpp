#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gridcut/topology.hpp"

namespace gridcut {

enum class MeasurementKind { LineFlow, BusAngle };

/// Provenance tag for measurements produced by a PMU.
struct PmuTag {
  int bus = 0;
  bool secure = false;
};

/// One meter. A LineFlow targets a line id (0-based index into the topology's
/// line list); a BusAngle targets a 1-based bus id. The measurement id is its
/// position in the MeasurementSet and equals its row in H.
struct Measurement {
  MeasurementKind kind = MeasurementKind::LineFlow;
  int target = 0;
  bool is_protected = false;
  std::optional<PmuTag> pmu;  // absent: SCADA-sourced
};

/// Ordered meter list plus the protected state variables S_v.
/// Ids are contiguous 0..m-1 in list order and stable under the with_* copies.
class MeasurementSet {
 public:
  MeasurementSet() = default;
  MeasurementSet(std::vector<Measurement> measurements, std::vector<int> protected_states);

  void validate(const GridTopology& topo) const;

  int size() const { return static_cast<int>(measurements_.size()); }
  const Measurement& at(int id) const { return measurements_[static_cast<std::size_t>(id)]; }
  const std::vector<Measurement>& measurements() const { return measurements_; }

  /// S_v, sorted ascending, duplicates removed.
  const std::vector<int>& protected_states() const { return protected_states_; }
  bool state_protected(int bus) const;

  std::vector<int> protected_ids() const;    // S_m
  std::vector<int> unprotected_ids() const;  // S_m^c

  /// Copy with one more protected measurement; ids unchanged.
  MeasurementSet with_protection(int id) const;

 private:
  std::vector<Measurement> measurements_;
  std::vector<int> protected_states_;
};

/// Dense m-by-n measurement matrix. Row k belongs to measurement id k:
/// a flow row carries +B at the lower-numbered endpoint and -B at the other,
/// an angle row carries a single 1.
struct MeasurementMatrix {
  Eigen::MatrixXd H;
  int rows() const { return static_cast<int>(H.rows()); }
  int cols() const { return static_cast<int>(H.cols()); }
  int row_of(int measurement_id) const { return measurement_id; }
};

MeasurementMatrix build_measurement_matrix(const GridTopology& topo, const MeasurementSet& ms);

/// Appends the measurements a PMU at `bus` would produce: the bus angle plus
/// one flow per incident line, in ascending line-id order. A secure PMU's
/// measurements are all protected and the bus joins S_v; an insecure PMU's
/// measurements are ordinary unprotected meters. Existing ids are untouched.
MeasurementSet expand_pmu(const MeasurementSet& ms, int bus, bool secure,
                          const GridTopology& topo);

}  // namespace gridcut
