#pragma once

// Exhaustive shortest pivot paths over the basis graph, for verifying the search on
// small instances.

#include <vector>

#include "pivotree/lp.hpp"
#include "pivotree/mcts.hpp"

namespace pivotree {

struct ShortestPaths {
  Index min_length = 0;
  /// Every distinct entering sequence of length min_length ending at an optimal basis,
  /// in lexicographic order.
  std::vector<PivotPath> all_paths;
  /// Optimal bases reached at depth min_length.
  std::vector<BasisSignature> optimal_bases;
  Index nodes_visited = 0;
};

/// Breadth-first search from `initial`, one edge per action of `variant` with the
/// leaving row given by the deterministic ratio test. Unbounded edges are skipped.
/// Throws GraphTooLarge past `node_limit` bases and Infeasible if no optimal basis is
/// reachable.
ShortestPaths bfs_shortest_pivot(const StandardFormLP& lp, const SimplexState& initial,
                                 ActionVariant variant, Index node_limit = 1'000'000);

/// |b1 \ b2|; both must have the same size.
Index basis_distance(const BasisSignature& b1, const BasisSignature& b2);

}  // namespace pivotree
