#pragma once

#include <vector>

namespace gridcut {

/// Transmission line between two buses. Susceptance is the magnitude B_ij > 0;
/// parallel lines between the same pair of buses are allowed.
struct Line {
  int from = 0;  // 1-based bus id
  int to = 0;    // 1-based bus id
  double susceptance = 0.0;
};

/// Physical network: buses 1..n plus susceptance-weighted lines.
/// Immutable after construction; construction validates the invariants.
class GridTopology {
 public:
  GridTopology(int bus_count, std::vector<Line> lines);

  int bus_count() const { return bus_count_; }
  int line_count() const { return static_cast<int>(lines_.size()); }
  const std::vector<Line>& lines() const { return lines_; }
  const Line& line(int id) const { return lines_[static_cast<std::size_t>(id)]; }

  /// Line ids touching the given bus, ascending.
  const std::vector<int>& incident_lines(int bus) const;
  int degree(int bus) const { return static_cast<int>(incident_lines(bus).size()); }

 private:
  int bus_count_;
  std::vector<Line> lines_;
  std::vector<std::vector<int>> incident_;  // index bus-1
};

}  // namespace gridcut
