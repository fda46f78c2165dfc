#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gridcut/measurement.hpp"
#include "gridcut/topology.hpp"

namespace gridcut {

/// Weighted multigraph edge between two supernodes. Weight equals the number
/// of measurement ids carried; parallel contributions are merged.
struct AttackEdge {
  int u = 0;
  int v = 0;
  long long weight = 0;
  std::vector<int> measurement_ids;
};

/// The (n+1)-node graph whose min-cut equals the minimum hidden-attack size.
/// Nodes 0..n-1 are buses 1..n, node n is the reference. Each unprotected
/// flow meter on line (i,j) is an edge {i,j}; each unprotected angle meter at
/// bus i is an edge {i, reference}. Protections are realized by contracting
/// nodes into supernodes; a supernode is named by its smallest member node, so
/// the partition is independent of the order protections were applied in.
class AttackGraph {
 public:
  int original_node_count() const { return static_cast<int>(supernode_of_.size()); }
  int reference_node() const { return original_node_count() - 1; }

  const std::vector<AttackEdge>& edges() const { return edges_; }

  /// Supernode (smallest member node) each original node belongs to.
  const std::vector<int>& supernode_of() const { return supernode_of_; }
  /// Distinct supernode ids, ascending.
  const std::vector<int>& supernodes() const { return supernodes_; }
  int supernode_count() const { return static_cast<int>(supernodes_.size()); }

  /// Original nodes belonging to the given supernode.
  std::vector<int> members(int supernode) const;

  /// True when every node contracted into one supernode: only c = 0 satisfies
  /// the protection constraints, so no attack exists.
  bool infeasible() const { return supernodes_.size() == 1; }

  /// True when the supernodes form a single connected component.
  bool connected() const;

  /// DOT text listing supernodes (with bus memberships) and weighted edges.
  std::string to_dot() const;

  friend AttackGraph build_attack_graph(const GridTopology&, const MeasurementSet&);
  friend AttackGraph apply_protections(const AttackGraph&, const MeasurementSet&);

 private:
  std::vector<AttackEdge> edges_;
  std::vector<int> supernode_of_;
  std::vector<int> supernodes_;
  // Endpoints of every measurement (internal node indexing), protected ones
  // included; lets apply_protections contract without the topology.
  std::vector<std::pair<int, int>> endpoints_;
};

/// Graph of the unprotected measurements only; no contractions yet.
AttackGraph build_attack_graph(const GridTopology& topo, const MeasurementSet& ms);

/// Contracts per the protections in `ms`: each bus in S_v merges with the
/// reference, each protected flow merges its endpoints, each protected angle
/// merges its bus with the reference. Self-loops are dropped and parallel
/// edges between supernodes are merged (weights add, id lists concatenate).
AttackGraph apply_protections(const AttackGraph& g, const MeasurementSet& ms);

}  // namespace gridcut
