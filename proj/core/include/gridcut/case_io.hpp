#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

enum class CaseFormat { MatpowerCase, NativeJson };

/// Picks the format from the file extension: .m -> MatpowerCase, .json -> NativeJson.
CaseFormat detect_case_format(const std::string& path);

/// Loaded network. Bus ids are renumbered to dense 1..n when the source file
/// has gaps; source_bus_ids[i] is the original id of dense bus i+1.
struct CaseData {
  GridTopology topology;
  std::vector<int> source_bus_ids;
};

/// MATPOWER input consumes only mpc.bus column 1 (ids) and mpc.branch columns
/// 1, 2, 4 (endpoints and reactance); susceptance is |1/x|. Native JSON input
/// consumes the `buses` and `lines` keys.
CaseData load_case(const std::string& path, CaseFormat format);

/// A concrete scenario: network, meters, protections, optional seed.
struct Scenario {
  GridTopology topology;
  MeasurementSet measurements;
  std::optional<std::uint64_t> seed;
};

std::string scenario_to_json_string(const Scenario& s);
Scenario scenario_from_json_string(const std::string& text);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

}  // namespace gridcut
