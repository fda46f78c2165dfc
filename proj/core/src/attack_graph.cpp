#include "gridcut/attack_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "gridcut/errors.hpp"

namespace gridcut {

namespace {

// Union-find with union by size; canonical supernode ids (smallest member)
// are resolved after all unions, so the result is order-independent.
struct UnionFind {
  std::vector<int> parent;
  std::vector<int> size;

  explicit UnionFind(int n)
      : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
  }
};

}  // namespace

std::vector<int> AttackGraph::members(int supernode) const {
  std::vector<int> out;
  for (int v = 0; v < original_node_count(); ++v) {
    if (supernode_of_[static_cast<std::size_t>(v)] == supernode) out.push_back(v);
  }
  return out;
}

bool AttackGraph::connected() const {
  if (supernodes_.empty()) return false;
  std::map<int, std::vector<int>> adj;
  for (const AttackEdge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> stack{supernodes_.front()};
  std::map<int, bool> seen{{supernodes_.front(), true}};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (int s : supernodes_) {
    if (!seen[s]) return false;
  }
  return true;
}

std::string AttackGraph::to_dot() const {
  std::ostringstream out;
  out << "graph attack {\n";
  const int ref = reference_node();
  for (int s : supernodes_) {
    out << "  n" << s << " [label=\"";
    bool first = true;
    for (int v : members(s)) {
      if (!first) out << ",";
      first = false;
      if (v == ref) {
        out << "ref";
      } else {
        out << (v + 1);  // external 1-based bus ids
      }
    }
    out << "\"];\n";
  }
  for (const AttackEdge& e : edges_) {
    out << "  n" << e.u << " -- n" << e.v << " [label=\"w=" << e.weight << " ids=";
    for (std::size_t i = 0; i < e.measurement_ids.size(); ++i) {
      if (i) out << ",";
      out << e.measurement_ids[i];
    }
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

AttackGraph build_attack_graph(const GridTopology& topo, const MeasurementSet& ms) {
  ms.validate(topo);
  const int nodes = topo.bus_count() + 1;
  const int ref = nodes - 1;

  AttackGraph g;
  g.endpoints_.reserve(static_cast<std::size_t>(ms.size()));
  for (int id = 0; id < ms.size(); ++id) {
    const Measurement& m = ms.at(id);
    if (m.kind == MeasurementKind::LineFlow) {
      const Line& l = topo.line(m.target);
      g.endpoints_.emplace_back(l.from - 1, l.to - 1);
    } else {
      g.endpoints_.emplace_back(m.target - 1, ref);
    }
  }

  std::map<std::pair<int, int>, std::size_t> index;
  for (int id = 0; id < ms.size(); ++id) {
    if (ms.at(id).is_protected) continue;
    auto [a, b] = g.endpoints_[static_cast<std::size_t>(id)];
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, g.edges_.size());
      g.edges_.push_back({key.first, key.second, 1, {id}});
    } else {
      AttackEdge& e = g.edges_[it->second];
      e.weight += 1;
      e.measurement_ids.push_back(id);
    }
  }

  g.supernode_of_.resize(static_cast<std::size_t>(nodes));
  std::iota(g.supernode_of_.begin(), g.supernode_of_.end(), 0);
  g.supernodes_ = g.supernode_of_;
  return g;
}

AttackGraph apply_protections(const AttackGraph& g, const MeasurementSet& ms) {
  const int nodes = g.original_node_count();
  const int ref = g.reference_node();
  if (ms.size() != static_cast<int>(g.endpoints_.size())) {
    throw ValidationError("protections applied to a graph built from a different measurement set");
  }

  UnionFind uf(nodes);
  for (int v = 0; v < nodes; ++v) uf.unite(v, g.supernode_of_[static_cast<std::size_t>(v)]);
  for (int bus : ms.protected_states()) uf.unite(bus - 1, ref);
  for (int id = 0; id < ms.size(); ++id) {
    if (!ms.at(id).is_protected) continue;
    const auto [a, b] = g.endpoints_[static_cast<std::size_t>(id)];
    uf.unite(a, b);
  }

  // Canonical supernode id = smallest node in the component.
  std::vector<int> canonical(static_cast<std::size_t>(nodes), -1);
  AttackGraph out;
  out.endpoints_ = g.endpoints_;
  out.supernode_of_.resize(static_cast<std::size_t>(nodes));
  for (int v = 0; v < nodes; ++v) {
    const int root = uf.find(v);
    if (canonical[static_cast<std::size_t>(root)] < 0) {
      canonical[static_cast<std::size_t>(root)] = v;  // nodes scanned ascending
    }
    out.supernode_of_[static_cast<std::size_t>(v)] = canonical[static_cast<std::size_t>(root)];
  }
  for (int v = 0; v < nodes; ++v) {
    if (out.supernode_of_[static_cast<std::size_t>(v)] == v) out.supernodes_.push_back(v);
  }

  std::map<std::pair<int, int>, std::size_t> index;
  for (const AttackEdge& edge : g.edges_) {
    const int su = out.supernode_of_[static_cast<std::size_t>(edge.u)];
    const int sv = out.supernode_of_[static_cast<std::size_t>(edge.v)];
    if (su == sv) continue;  // internal to a supernode
    const std::pair<int, int> key{std::min(su, sv), std::max(su, sv)};
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.edges_.size());
      out.edges_.push_back({key.first, key.second, edge.weight, edge.measurement_ids});
    } else {
      AttackEdge& e = out.edges_[it->second];
      e.weight += edge.weight;
      e.measurement_ids.insert(e.measurement_ids.end(), edge.measurement_ids.begin(),
                               edge.measurement_ids.end());
    }
  }
  return out;
}

}  // namespace gridcut
