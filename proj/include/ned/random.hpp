#pragma once

// Seeded generators for synthetic trees and graphs.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ned/graph.hpp"
#include "ned/level_tree.hpp"

namespace ned {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// n nodes, each attached to a uniformly chosen earlier node whose depth is
// below max_depth (edges from the root).
inline LevelTree random_tree(std::size_t n, int max_depth, Rng& rng) {
  std::vector<int> parent{-1}, depth{0}, open;
  if (max_depth > 0) open.push_back(0);
  for (std::size_t v = 1; v < n && !open.empty(); ++v) {
    int p = open[uniform_index(rng, open.size())];
    parent.push_back(p);
    depth.push_back(depth[static_cast<std::size_t>(p)] + 1);
    if (depth.back() < max_depth) open.push_back(static_cast<int>(v));
  }
  return from_parent_array(parent);
}

// Tree with prescribed level widths; each node picks a uniform parent on the
// level above.
inline LevelTree random_layered_tree(const std::vector<std::size_t>& widths, Rng& rng) {
  std::vector<LevelTree::Level> levels{{{LevelTree::kNoParent}, {}}};
  for (std::size_t i = 1; i < widths.size(); ++i) {
    LevelTree::Level lv;
    const std::size_t above = levels.back().parent.size();
    for (std::size_t j = 0; j < widths[i]; ++j)
      lv.parent.push_back(static_cast<std::int32_t>(uniform_index(rng, above)));
    std::sort(lv.parent.begin(), lv.parent.end());
    levels.push_back(std::move(lv));
  }
  return LevelTree(std::move(levels), static_cast<int>(widths.size()));
}

// G(n, m): m distinct uniformly random edges, labels "0".."n-1".
inline Graph random_graph(std::size_t n, std::size_t m, Rng& rng, bool directed = false) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  const std::size_t max_edges = directed ? n * (n - 1) : n * (n - 1) / 2;
  if (m > max_edges) m = max_edges;
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  while (edges.size() < m) {
    auto a = static_cast<NodeIndex>(uniform_index(rng, n));
    auto b = static_cast<NodeIndex>(uniform_index(rng, n));
    if (a == b) continue;
    auto key = directed ? std::pair{a, b} : std::pair{std::min(a, b), std::max(a, b)};
    if (seen.insert(key).second) edges.push_back(key);
  }
  return Graph::from_edges(directed, std::move(labels), std::move(edges));
}

}  // namespace ned
