#include "gridcut/mincut.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

#include "gridcut/errors.hpp"

namespace gridcut {

CutResult global_min_cut(const AttackGraph& g) {
  if (g.infeasible()) throw InfeasibleError("graph contracted to a single supernode");
  if (!g.connected()) throw DisconnectedError("attack graph is disconnected");

  const std::vector<int>& ids = g.supernodes();
  const int k = static_cast<int>(ids.size());
  std::map<int, int> index_of;
  for (int i = 0; i < k; ++i) index_of[ids[static_cast<std::size_t>(i)]] = i;

  // Dense weight matrix over supernodes; parallel edges are already merged.
  std::vector<std::vector<long long>> w(static_cast<std::size_t>(k),
                                        std::vector<long long>(static_cast<std::size_t>(k), 0));
  for (const AttackEdge& e : g.edges()) {
    const int a = index_of.at(e.u);
    const int b = index_of.at(e.v);
    w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += e.weight;
    w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += e.weight;
  }

  std::vector<bool> merged(static_cast<std::size_t>(k), false);
  std::vector<std::vector<int>> group(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) group[static_cast<std::size_t>(i)] = {i};

  long long best_value = std::numeric_limits<long long>::max();
  std::vector<int> best_group;

  // Every phase's maximum-adjacency ordering starts at the vertex holding the
  // reference supernode; ties pick the lowest index. This pins down which of
  // several equal minimum cuts is returned.
  const int ref_super = g.supernode_of()[static_cast<std::size_t>(g.reference_node())];
  int ref_vertex = index_of.at(ref_super);

  for (int phase = 0; phase < k - 1; ++phase) {
    std::vector<long long> key(static_cast<std::size_t>(k), 0);
    std::vector<bool> in_order(static_cast<std::size_t>(k), false);
    int prev = -1, last = -1;
    long long cut_of_phase = 0;
    const int active = k - phase;
    for (int step = 0; step < active; ++step) {
      int pick = -1;
      if (step == 0) {
        pick = ref_vertex;
      } else {
        for (int v = 0; v < k; ++v) {
          if (merged[static_cast<std::size_t>(v)] || in_order[static_cast<std::size_t>(v)]) continue;
          if (pick < 0 || key[static_cast<std::size_t>(v)] > key[static_cast<std::size_t>(pick)]) {
            pick = v;
          }
        }
      }
      in_order[static_cast<std::size_t>(pick)] = true;
      prev = last;
      last = pick;
      cut_of_phase = key[static_cast<std::size_t>(pick)];
      for (int v = 0; v < k; ++v) {
        if (merged[static_cast<std::size_t>(v)] || in_order[static_cast<std::size_t>(v)]) continue;
        key[static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
      }
    }

    if (cut_of_phase < best_value) {
      best_value = cut_of_phase;
      best_group = group[static_cast<std::size_t>(last)];
    }

    // Merge the last vertex into the second-to-last.
    if (last == ref_vertex) ref_vertex = prev;
    merged[static_cast<std::size_t>(last)] = true;
    group[static_cast<std::size_t>(prev)].insert(group[static_cast<std::size_t>(prev)].end(),
                                                 group[static_cast<std::size_t>(last)].begin(),
                                                 group[static_cast<std::size_t>(last)].end());
    for (int v = 0; v < k; ++v) {
      if (merged[static_cast<std::size_t>(v)] || v == prev) continue;
      w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] +=
          w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
      w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] =
          w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
    }
  }

  // Normalize: attacked side excludes the reference supernode.
  std::vector<bool> in_best(static_cast<std::size_t>(k), false);
  for (int i : best_group) in_best[static_cast<std::size_t>(i)] = true;
  const bool ref_in_best = in_best[static_cast<std::size_t>(index_of.at(ref_super))];

  CutResult cut;
  cut.value = best_value;
  for (int i = 0; i < k; ++i) {
    const bool attacked = ref_in_best ? !in_best[static_cast<std::size_t>(i)]
                                      : in_best[static_cast<std::size_t>(i)];
    (attacked ? cut.attacked_side : cut.side_of_reference)
        .push_back(ids[static_cast<std::size_t>(i)]);
  }

  long long crossing = 0;
  std::map<int, bool> attacked_set;
  for (int s : cut.attacked_side) attacked_set[s] = true;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const AttackEdge& e = g.edges()[i];
    if (attacked_set[e.u] != attacked_set[e.v]) {
      cut.cut_edges.push_back(static_cast<int>(i));
      crossing += e.weight;
    }
  }
  if (crossing != cut.value) {
    throw Error("min-cut internal inconsistency: crossing weight " + std::to_string(crossing) +
                " != phase value " + std::to_string(cut.value));
  }
  return cut;
}

std::vector<int> label_sides(const AttackGraph& g, const CutResult& cut) {
  std::vector<bool> removed_edge(g.edges().size(), false);
  for (int e : cut.cut_edges) removed_edge[static_cast<std::size_t>(e)] = true;

  std::map<int, std::vector<int>> adj;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (removed_edge[i]) continue;
    const AttackEdge& e = g.edges()[i];
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  const int ref_super = g.supernode_of()[static_cast<std::size_t>(g.reference_node())];
  std::map<int, bool> reached{{ref_super, true}};
  std::queue<int> queue;
  queue.push(ref_super);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int u : adj[v]) {
      if (!reached[u]) {
        reached[u] = true;
        queue.push(u);
      }
    }
  }

  std::vector<int> labels(static_cast<std::size_t>(g.original_node_count()), 1);
  for (int v = 0; v < g.original_node_count(); ++v) {
    const int s = g.supernode_of()[static_cast<std::size_t>(v)];
    labels[static_cast<std::size_t>(v)] = reached.count(s) && reached[s] ? 0 : 1;
  }
  return labels;
}

}  // namespace gridcut
