#include "pivotree/oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>

#include "pivotree/errors.hpp"
#include "pivotree/rng.hpp"

namespace pivotree {

namespace {

// Sorted basis columns, 32-bit to keep million-vertex graphs in memory.
using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (std::uint32_t c : k) h = mix64(h ^ (static_cast<std::uint64_t>(c) + 1));
    return static_cast<std::size_t>(h);
  }
};

struct Vertex {
  const Key* key = nullptr;
  Index depth = 0;
  /// (predecessor vertex, entering column) for every edge from the previous level.
  std::vector<std::pair<Index, std::uint32_t>> parents;
};

Key make_key(std::span<const Index> basis) {
  Key k(basis.begin(), basis.end());
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

ShortestPaths bfs_shortest_pivot(const StandardFormLP& lp, const SimplexState& initial,
                                 ActionVariant variant, Index node_limit) {
  const Tolerances tol = initial.tolerances();
  std::vector<Vertex> vertices;
  std::unordered_map<Key, Index, KeyHash> index;
  const auto add_vertex = [&](Key key, Index depth) {
    if (vertices.size() >= node_limit) {
      // Levels below the one being expanded (depth - 1) were fully checked.
      std::string what = "basis graph exceeds node limit of " + std::to_string(node_limit);
      if (depth >= 2) what += "; no optimal basis within " + std::to_string(depth - 2) + " pivots";
      throw GraphTooLarge(what);
    }
    const auto it = index.emplace(std::move(key), vertices.size()).first;
    vertices.push_back({&it->first, depth, {}});
    return it->second;
  };
  add_vertex(make_key(initial.basis()), 0);

  std::vector<Index> frontier{0};
  std::vector<std::pair<Index, double>> goals;
  std::vector<Index> basis;
  Index depth = 0;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index v : frontier) {
      // Fresh factorization per vertex: no update drift, and no dense state kept per vertex.
      basis.assign(vertices[v].key->begin(), vertices[v].key->end());
      const SimplexState here =
          depth == 0 ? initial : SimplexState::from_basis(lp, basis, tol);
      if (is_optimal(here)) {
        goals.emplace_back(v, objective_value(lp, here));
        continue;
      }
      if (!goals.empty()) continue;
      for (Index a : action_set(here, variant)) {
        const auto rt = ratio_test(here, entering_direction(here, lp, a));
        if (!rt) continue;
        std::vector<Index> child = here.basis();
        child[rt->row] = a;
        Key key = make_key(child);
        auto it = index.find(key);
        Index target;
        if (it == index.end()) {
          target = add_vertex(std::move(key), depth + 1);
          next.push_back(target);
        } else {
          target = it->second;
        }
        if (vertices[target].depth == depth + 1)
          vertices[target].parents.emplace_back(v, static_cast<std::uint32_t>(a));
      }
    }
    if (!goals.empty()) break;
    frontier = std::move(next);
    ++depth;
  }
  if (goals.empty()) throw Infeasible("no optimal basis reachable from the initial basis");

  ShortestPaths out;
  out.min_length = depth;
  out.nodes_visited = vertices.size();
  std::vector<Index> reversed;
  const std::function<void(Index, double)> unwind = [&](Index v, double objective) {
    if (vertices[v].parents.empty()) {
      out.all_paths.push_back({{reversed.rbegin(), reversed.rend()}, objective});
      return;
    }
    for (const auto& [parent, action] : vertices[v].parents) {
      reversed.push_back(action);
      unwind(parent, objective);
      reversed.pop_back();
    }
  };
  for (const auto& [g, objective] : goals) {
    out.optimal_bases.push_back(BasisSignature{{vertices[g].key->begin(), vertices[g].key->end()}});
    unwind(g, objective);
  }
  std::sort(out.all_paths.begin(), out.all_paths.end(),
            [](const PivotPath& a, const PivotPath& b) { return a.entering < b.entering; });
  return out;
}

Index basis_distance(const BasisSignature& b1, const BasisSignature& b2) {
  if (b1.columns.size() != b2.columns.size()) throw Error("basis sizes differ");
  Index shared = 0;
  auto i = b1.columns.begin();
  auto j = b2.columns.begin();
  while (i != b1.columns.end() && j != b2.columns.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return b1.columns.size() - shared;
}

}  // namespace pivotree
