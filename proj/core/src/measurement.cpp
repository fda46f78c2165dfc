#include "gridcut/measurement.hpp"

#include <algorithm>
#include <utility>

#include "gridcut/errors.hpp"

namespace gridcut {

MeasurementSet::MeasurementSet(std::vector<Measurement> measurements,
                               std::vector<int> protected_states)
    : measurements_(std::move(measurements)), protected_states_(std::move(protected_states)) {
  std::sort(protected_states_.begin(), protected_states_.end());
  protected_states_.erase(std::unique(protected_states_.begin(), protected_states_.end()),
                          protected_states_.end());
}

void MeasurementSet::validate(const GridTopology& topo) const {
  for (std::size_t i = 0; i < measurements_.size(); ++i) {
    const Measurement& m = measurements_[i];
    if (m.kind == MeasurementKind::LineFlow) {
      if (m.target < 0 || m.target >= topo.line_count()) {
        throw ValidationError("measurement " + std::to_string(i) + " references unknown line " +
                              std::to_string(m.target));
      }
    } else {
      if (m.target < 1 || m.target > topo.bus_count()) {
        throw ValidationError("measurement " + std::to_string(i) + " references unknown bus " +
                              std::to_string(m.target));
      }
    }
    if (m.pmu) {
      if (m.pmu->bus < 1 || m.pmu->bus > topo.bus_count()) {
        throw ValidationError("measurement " + std::to_string(i) + " tagged with unknown PMU bus " +
                              std::to_string(m.pmu->bus));
      }
      if (m.pmu->secure && !m.is_protected) {
        throw ValidationError("measurement " + std::to_string(i) +
                              " from a secure PMU must be protected");
      }
    }
  }
  for (int bus : protected_states_) {
    if (bus < 1 || bus > topo.bus_count()) {
      throw ValidationError("protected state references unknown bus " + std::to_string(bus));
    }
  }
}

bool MeasurementSet::state_protected(int bus) const {
  return std::binary_search(protected_states_.begin(), protected_states_.end(), bus);
}

std::vector<int> MeasurementSet::protected_ids() const {
  std::vector<int> ids;
  for (int i = 0; i < size(); ++i) {
    if (measurements_[static_cast<std::size_t>(i)].is_protected) ids.push_back(i);
  }
  return ids;
}

std::vector<int> MeasurementSet::unprotected_ids() const {
  std::vector<int> ids;
  for (int i = 0; i < size(); ++i) {
    if (!measurements_[static_cast<std::size_t>(i)].is_protected) ids.push_back(i);
  }
  return ids;
}

MeasurementSet MeasurementSet::with_protection(int id) const {
  MeasurementSet copy = *this;
  copy.measurements_[static_cast<std::size_t>(id)].is_protected = true;
  return copy;
}

MeasurementMatrix build_measurement_matrix(const GridTopology& topo, const MeasurementSet& ms) {
  MeasurementMatrix mm;
  mm.H = Eigen::MatrixXd::Zero(ms.size(), topo.bus_count());
  for (int k = 0; k < ms.size(); ++k) {
    const Measurement& m = ms.at(k);
    if (m.kind == MeasurementKind::LineFlow) {
      const Line& l = topo.line(m.target);
      const int lo = std::min(l.from, l.to);
      const int hi = std::max(l.from, l.to);
      mm.H(k, lo - 1) = l.susceptance;
      mm.H(k, hi - 1) = -l.susceptance;
    } else {
      mm.H(k, m.target - 1) = 1.0;
    }
  }
  return mm;
}

MeasurementSet expand_pmu(const MeasurementSet& ms, int bus, bool secure,
                          const GridTopology& topo) {
  if (bus < 1 || bus > topo.bus_count()) {
    throw ValidationError("PMU placed at unknown bus " + std::to_string(bus));
  }
  std::vector<Measurement> out = ms.measurements();
  const PmuTag tag{bus, secure};
  out.push_back({MeasurementKind::BusAngle, bus, secure, tag});
  for (int line_id : topo.incident_lines(bus)) {
    out.push_back({MeasurementKind::LineFlow, line_id, secure, tag});
  }
  std::vector<int> states = ms.protected_states();
  if (secure) states.push_back(bus);
  return MeasurementSet(std::move(out), std::move(states));
}

}  // namespace gridcut
