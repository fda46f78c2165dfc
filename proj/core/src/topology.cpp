#include "gridcut/topology.hpp"

#include <utility>

#include "gridcut/errors.hpp"

namespace gridcut {

GridTopology::GridTopology(int bus_count, std::vector<Line> lines)
    : bus_count_(bus_count), lines_(std::move(lines)) {
  if (bus_count_ <= 0) throw ValidationError("bus count must be positive");
  incident_.resize(static_cast<std::size_t>(bus_count_));
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const Line& l = lines_[i];
    if (l.from < 1 || l.from > bus_count_ || l.to < 1 || l.to > bus_count_) {
      throw ValidationError("line " + std::to_string(i) + " references unknown bus (" +
                            std::to_string(l.from) + "," + std::to_string(l.to) + ")");
    }
    if (l.from == l.to) {
      throw ValidationError("line " + std::to_string(i) + " connects bus " +
                            std::to_string(l.from) + " to itself");
    }
    if (!(l.susceptance > 0.0)) {
      throw ValidationError("line " + std::to_string(i) + " has non-positive susceptance");
    }
    incident_[static_cast<std::size_t>(l.from - 1)].push_back(static_cast<int>(i));
    incident_[static_cast<std::size_t>(l.to - 1)].push_back(static_cast<int>(i));
  }
}

const std::vector<int>& GridTopology::incident_lines(int bus) const {
  if (bus < 1 || bus > bus_count_) throw ValidationError("unknown bus " + std::to_string(bus));
  return incident_[static_cast<std::size_t>(bus - 1)];
}

}  // namespace gridcut
