#pragma once

#include <vector>

#include "gridcut/attack_graph.hpp"

namespace gridcut {

/// A global minimum cut, normalized so the reference supernode sits in
/// side_of_reference. cut_edges index into the graph's edge list and their
/// weights sum to value.
struct CutResult {
  long long value = 0;
  std::vector<int> side_of_reference;  // supernode ids, ascending
  std::vector<int> attacked_side;      // supernode ids, ascending, non-empty
  std::vector<int> cut_edges;          // indices into AttackGraph::edges()
};

/// Stoer-Wagner global minimum cut over the supernodes of g.
/// Deterministic: maximum-adjacency orderings start at the lowest supernode,
/// ties pick the lowest index, and the first minimum found wins.
/// Throws InfeasibleError when g.infeasible(), DisconnectedError when the
/// supernodes are not connected.
CutResult global_min_cut(const AttackGraph& g);

/// Removes the cut edges and breadth-first traverses from the reference
/// supernode; reached original nodes get label 0, unreached get 1. The result
/// has one entry per original node (buses then reference) and is the 0-1
/// state-shift pattern expanded through the contraction map.
std::vector<int> label_sides(const AttackGraph& g, const CutResult& cut);

}  // namespace gridcut
