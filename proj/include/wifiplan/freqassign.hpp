#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wifiplan/efficiency.hpp"
#include "wifiplan/topology.hpp"

namespace wifiplan {

/// Interference structure of a fixed cover. For each TP i:
///   co_associated[i] = H_i   neighbors sharing a_i,
///   hidden[i]        = U_i   neighbors outside I_{a_i} whose AP covers i,
///   contested[i]     = Ū_i   neighbors on another AP that interfere iff
///                            that AP shares a_i's frequency,
///   contested_aps[i] = C_i   the APs of the contested neighbors.
struct FixedAssociationSets {
  Association association;
  std::vector<std::vector<int>> co_associated;
  std::vector<std::vector<int>> hidden;
  std::vector<std::vector<int>> contested;
  std::vector<std::vector<int>> contested_aps;
};

FixedAssociationSets fixed_association_sets(const Topology& topo, const Cover& cover);

/// Drops installed sites no TP associates to.
Cover prune_unused_aps(const Topology& topo, const Cover& cover);

/// Node k is `sites[k]`; adjacency lists hold node indices, sorted.
struct OverlapGraph {
  std::vector<int> sites;
  std::vector<std::vector<int>> adjacency;

  int num_nodes() const { return static_cast<int>(sites.size()); }
  /// Edges as (site, site) pairs with first < second, sorted.
  std::vector<std::pair<int, int>> edges() const;
};

OverlapGraph build_overlap_graph(const Topology& topo, const Cover& cover);

inline constexpr int kUncolored = -1;

/// DSATUR with at most `num_colors` colors; a node with every color taken by
/// its neighbors is left kUncolored. Returns one entry per node.
std::vector<int> greedy_coloring(const OverlapGraph& graph, int num_colors);

struct FaBudget {
  int max_sites = 14;
};

struct FaResult {
  FrequencyAssignment assignment;
  EfficiencyValue value;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
};

/// Optimal f: S → {0..num_freqs-1} by branch and bound over restricted-growth
/// colorings. Throws BudgetExceededWith<FaResult> when |S| > max_sites.
FaResult solve_exact_fa(const Topology& topo, const Cover& cover, int num_freqs,
                        const FaBudget& budget = {});

/// Greedy-colors the overlap graph first. Components that come out fully
/// colored are kept (they reach e^CS on their TPs); the others are solved
/// exactly and independently, since a TP's term only involves its AP and
/// that AP's overlap neighbors.
FaResult reduce_then_solve(const Topology& topo, const Cover& cover, int num_freqs,
                           const FaBudget& budget = {});

/// Greedy coloring, best-color completion of uncolored APs, then one-AP
/// recoloring until no strict improvement.
FaResult solve_local_fa(const Topology& topo, const Cover& cover, int num_freqs);

}  // namespace wifiplan
