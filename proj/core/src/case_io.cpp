#include "gridcut/case_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "gridcut/errors.hpp"
#include "json.hpp"

namespace gridcut {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One numeric row of a MATPOWER matrix block, with its 1-based source line.
struct MatrixRow {
  std::vector<double> values;
  int line_no = 0;
};

// Extracts the rows of `mpc.<name> = [ ... ];`. Strips % comments. Rows are
// separated by ';' or newlines.
std::vector<MatrixRow> parse_matrix_block(const std::string& text, const std::string& name,
                                          const std::string& path) {
  const std::string needle = "mpc." + name;
  std::size_t pos = text.find(needle);
  if (pos == std::string::npos) throw ParseError(path + ": missing " + needle + " block");
  pos = text.find('[', pos);
  if (pos == std::string::npos) throw ParseError(path + ": " + needle + " block has no '['");

  int line_no = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') ++line_no;
  }

  std::vector<MatrixRow> rows;
  MatrixRow current;
  current.line_no = line_no;
  std::string token;
  bool in_comment = false;
  auto flush_token = [&]() {
    if (token.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == nullptr || *end != '\0') {
      throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    current.values.push_back(v);
    token.clear();
  };
  auto flush_row = [&]() {
    flush_token();
    if (!current.values.empty()) rows.push_back(std::move(current));
    current = MatrixRow{};
    current.line_no = line_no;
  };

  for (std::size_t i = pos + 1; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') {
      if (!in_comment) flush_row();
      in_comment = false;
      ++line_no;
      current.line_no = line_no;
      continue;
    }
    if (in_comment) continue;
    if (ch == '%') {
      in_comment = true;
      continue;
    }
    if (ch == ']') {
      flush_row();
      return rows;
    }
    if (ch == ';') {
      flush_row();
    } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
      flush_token();
    } else {
      token += ch;
    }
  }
  throw ParseError(path + ": unterminated " + needle + " block");
}

CaseData load_matpower(const std::string& path) {
  const std::string text = read_file(path);
  const auto bus_rows = parse_matrix_block(text, "bus", path);
  const auto branch_rows = parse_matrix_block(text, "branch", path);
  if (bus_rows.empty()) throw ParseError(path + ": empty mpc.bus block");

  std::vector<int> source_ids;
  std::map<int, int> dense_of;  // source id -> 1-based dense id
  for (const auto& row : bus_rows) {
    const double raw = row.values[0];
    const int id = static_cast<int>(raw);
    if (static_cast<double>(id) != raw || id <= 0) {
      throw ParseError(path + ":" + std::to_string(row.line_no) + ": bus id must be a positive integer");
    }
    if (dense_of.count(id)) {
      throw ValidationError(path + ":" + std::to_string(row.line_no) + ": duplicate bus id " +
                            std::to_string(id));
    }
    source_ids.push_back(id);
    dense_of[id] = static_cast<int>(source_ids.size());
  }

  std::vector<Line> lines;
  for (const auto& row : branch_rows) {
    if (row.values.size() < 4) {
      throw ParseError(path + ":" + std::to_string(row.line_no) +
                       ": branch row needs at least 4 columns");
    }
    const int from = static_cast<int>(row.values[0]);
    const int to = static_cast<int>(row.values[1]);
    const double x = row.values[3];
    auto fi = dense_of.find(from);
    auto ti = dense_of.find(to);
    if (fi == dense_of.end() || ti == dense_of.end()) {
      throw ValidationError(path + ":" + std::to_string(row.line_no) + ": branch (" +
                            std::to_string(from) + "," + std::to_string(to) +
                            ") references unknown bus");
    }
    if (x == 0.0) {
      throw ValidationError(path + ":" + std::to_string(row.line_no) +
                            ": branch has zero reactance");
    }
    lines.push_back({fi->second, ti->second, std::abs(1.0 / x)});
  }
  return {GridTopology(static_cast<int>(source_ids.size()), std::move(lines)),
          std::move(source_ids)};
}

GridTopology topology_from_json(const json& j) {
  if (!j.contains("buses") || !j.contains("lines")) {
    throw ParseError("scenario JSON needs 'buses' and 'lines'");
  }
  const int n = j.at("buses").get<int>();
  std::vector<Line> lines;
  for (const auto& entry : j.at("lines")) {
    if (!entry.is_array() || entry.size() != 3) {
      throw ParseError("each line must be [from, to, susceptance]");
    }
    lines.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>()});
  }
  return GridTopology(n, std::move(lines));
}

// Flow targets are written as line ids but may be given as [from, to] pairs;
// a pair resolves to the lowest-id line with those endpoints.
int resolve_flow_target(const json& t, const GridTopology& topo) {
  if (t.is_number_integer()) return t.get<int>();
  if (t.is_array() && t.size() == 2) {
    const int a = t[0].get<int>();
    const int b = t[1].get<int>();
    for (int i = 0; i < topo.line_count(); ++i) {
      const Line& l = topo.line(i);
      if ((l.from == a && l.to == b) || (l.from == b && l.to == a)) return i;
    }
    throw ValidationError("flow measurement references missing line (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
  }
  throw ParseError("flow target must be a line id or [from, to]");
}

MeasurementSet measurements_from_json(const json& j, const GridTopology& topo) {
  std::vector<Measurement> out;
  if (j.contains("measurements")) {
    for (const auto& entry : j.at("measurements")) {
      Measurement m;
      const std::string kind = entry.at("kind").get<std::string>();
      if (kind == "flow") {
        m.kind = MeasurementKind::LineFlow;
        m.target = resolve_flow_target(entry.at("target"), topo);
      } else if (kind == "angle") {
        m.kind = MeasurementKind::BusAngle;
        m.target = entry.at("target").get<int>();
      } else {
        throw ParseError("unknown measurement kind '" + kind + "'");
      }
      m.is_protected = entry.value("protected", false);
      if (entry.contains("source")) {
        const auto& src = entry.at("source");
        const std::string type = src.at("type").get<std::string>();
        if (type == "pmu") {
          m.pmu = PmuTag{src.at("bus").get<int>(), src.value("secure", false)};
        } else if (type != "scada") {
          throw ParseError("unknown measurement source '" + type + "'");
        }
      }
      out.push_back(m);
    }
  }
  std::vector<int> states;
  if (j.contains("protected_states")) {
    for (const auto& b : j.at("protected_states")) states.push_back(b.get<int>());
  }
  return MeasurementSet(std::move(out), std::move(states));
}

}  // namespace

CaseFormat detect_case_format(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".m") return CaseFormat::MatpowerCase;
  if (ext == ".json") return CaseFormat::NativeJson;
  throw ParseError("cannot infer case format from '" + path + "' (expected .m or .json)");
}

CaseData load_case(const std::string& path, CaseFormat format) {
  if (format == CaseFormat::MatpowerCase) return load_matpower(path);
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  GridTopology topo = topology_from_json(j);
  std::vector<int> ids(static_cast<std::size_t>(topo.bus_count()));
  for (int i = 0; i < topo.bus_count(); ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return {std::move(topo), std::move(ids)};
}

std::string scenario_to_json_string(const Scenario& s) {
  json j;
  j["buses"] = s.topology.bus_count();
  json lines = json::array();
  for (const Line& l : s.topology.lines()) lines.push_back({l.from, l.to, l.susceptance});
  j["lines"] = lines;
  json ms = json::array();
  for (const Measurement& m : s.measurements.measurements()) {
    json e;
    e["kind"] = m.kind == MeasurementKind::LineFlow ? "flow" : "angle";
    e["target"] = m.target;
    e["protected"] = m.is_protected;
    if (m.pmu) {
      e["source"] = {{"type", "pmu"}, {"bus", m.pmu->bus}, {"secure", m.pmu->secure}};
    } else {
      e["source"] = {{"type", "scada"}};
    }
    ms.push_back(e);
  }
  j["measurements"] = ms;
  j["protected_states"] = s.measurements.protected_states();
  if (s.seed) j["seed"] = *s.seed;
  return j.dump(2) + "\n";
}

Scenario scenario_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  GridTopology topo = topology_from_json(j);
  MeasurementSet ms = measurements_from_json(j, topo);
  ms.validate(topo);
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  return {std::move(topo), std::move(ms), seed};
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json_string(read_file(path));
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << scenario_to_json_string(s);
}

}  // namespace gridcut
