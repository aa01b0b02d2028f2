#pragma once

// Node distances on top of TED*: NED between nodes of (possibly different)
// graphs, its directed form, and the Hausdorff distance between graphs.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "ned/error.hpp"
#include "ned/graph.hpp"
#include "ned/level_tree.hpp"
#include "ned/parallel.hpp"
#include "ned/ted_star.hpp"
#include "ned/weights.hpp"

namespace ned {

// Memoized k-adjacent trees keyed by (graph, node, k, mode). Entries are
// never evicted, so returned references stay valid for the cache lifetime.
class TreeCache {
 public:
  const LevelTree& get(const Graph& g, NodeIndex v, int k, Direction mode) {
    Key key{&g, v, k, mode};
    {
      std::lock_guard lock(mu_);
      if (auto it = trees_.find(key); it != trees_.end()) return *it->second;
    }
    auto tree = std::make_unique<LevelTree>(extract_k_adjacent_tree(g, v, k, mode));
    std::lock_guard lock(mu_);
    auto [it, inserted] = trees_.try_emplace(key, std::move(tree));
    return *it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return trees_.size();
  }

 private:
  using Key = std::tuple<const Graph*, NodeIndex, int, Direction>;
  mutable std::mutex mu_;
  std::map<Key, std::unique_ptr<LevelTree>> trees_;
};

namespace detail {

inline const LevelTree& tree_for(const Graph& g, NodeIndex v, int k, Direction mode,
                                 TreeCache* cache, std::optional<LevelTree>& local) {
  if (cache) return cache->get(g, v, k, mode);
  local.emplace(extract_k_adjacent_tree(g, v, k, mode));
  return *local;
}

}  // namespace detail

// TED* between the k-adjacent trees of u in gu and v in gv, with breakdown.
inline TedStarResult ned_breakdown(const Graph& gu, NodeIndex u, const Graph& gv, NodeIndex v,
                                   int k, const WeightScheme& weights = WeightScheme::unit(),
                                   TreeCache* cache = nullptr) {
  if (gu.directed() || gv.directed())
    throw UsageError("ned: directed graph given, use ned_directed");
  std::optional<LevelTree> a, b;
  return ted_star(detail::tree_for(gu, u, k, Direction::undirected, cache, a),
                  detail::tree_for(gv, v, k, Direction::undirected, cache, b), weights);
}

inline Rational ned(const Graph& gu, NodeIndex u, const Graph& gv, NodeIndex v, int k,
                    const WeightScheme& weights = WeightScheme::unit(),
                    TreeCache* cache = nullptr) {
  if (gu.directed() || gv.directed())
    throw UsageError("ned: directed graph given, use ned_directed");
  std::optional<LevelTree> a, b;
  return ted_star_distance_only(detail::tree_for(gu, u, k, Direction::undirected, cache, a),
                                detail::tree_for(gv, v, k, Direction::undirected, cache, b),
                                weights);
}

struct DirectedNedResult {
  TedStarResult in;
  TedStarResult out;
  Rational distance{0};
};

// Sum of TED* over the in-edge trees and over the out-edge trees.
inline DirectedNedResult ned_directed_breakdown(const Graph& gu, NodeIndex u, const Graph& gv,
                                                NodeIndex v, int k,
                                                const WeightScheme& weights = WeightScheme::unit(),
                                                TreeCache* cache = nullptr) {
  if (!gu.directed() || !gv.directed())
    throw UsageError("ned_directed: both graphs must be directed");
  std::optional<LevelTree> a, b, c, d;
  DirectedNedResult r;
  r.in = ted_star(detail::tree_for(gu, u, k, Direction::in, cache, a),
                  detail::tree_for(gv, v, k, Direction::in, cache, b), weights);
  r.out = ted_star(detail::tree_for(gu, u, k, Direction::out, cache, c),
                   detail::tree_for(gv, v, k, Direction::out, cache, d), weights);
  r.distance = r.in.distance + r.out.distance;
  return r;
}

inline Rational ned_directed(const Graph& gu, NodeIndex u, const Graph& gv, NodeIndex v, int k,
                             const WeightScheme& weights = WeightScheme::unit(),
                             TreeCache* cache = nullptr) {
  if (!gu.directed() || !gv.directed())
    throw UsageError("ned_directed: both graphs must be directed");
  std::optional<LevelTree> a, b, c, d;
  return ted_star_distance_only(detail::tree_for(gu, u, k, Direction::in, cache, a),
                                detail::tree_for(gv, v, k, Direction::in, cache, b), weights) +
         ted_star_distance_only(detail::tree_for(gu, u, k, Direction::out, cache, c),
                                detail::tree_for(gv, v, k, Direction::out, cache, d), weights);
}

// Everything NED needs about one node: its k-adjacent tree, or for directed
// graphs the out-edge tree plus the in-edge tree.
struct NodeSignature {
  LevelTree tree;
  std::optional<LevelTree> in_tree;
};

inline NodeSignature make_signature(const Graph& g, NodeIndex v, int k) {
  if (!g.directed()) return {extract_k_adjacent_tree(g, v, k, Direction::undirected), {}};
  return {extract_k_adjacent_tree(g, v, k, Direction::out),
          extract_k_adjacent_tree(g, v, k, Direction::in)};
}

inline std::vector<NodeSignature> make_signatures(const Graph& g, int k) {
  std::vector<NodeSignature> out(g.size());
  parallel_for(g.size(), [&](std::size_t v) {
    out[v] = make_signature(g, static_cast<NodeIndex>(v), k);
  });
  return out;
}

// ned or ned_directed, depending on the signature kind.
inline Rational signature_distance(const NodeSignature& a, const NodeSignature& b,
                                   const WeightScheme& weights = WeightScheme::unit()) {
  if (a.in_tree.has_value() != b.in_tree.has_value())
    throw UsageError("cannot compare nodes of a directed and an undirected graph");
  Rational d = ted_star_distance_only(a.tree, b.tree, weights);
  if (a.in_tree) d += ted_star_distance_only(*a.in_tree, *b.in_tree, weights);
  return d;
}

// Graphs up to this size are compared exactly unless a sample is requested.
inline constexpr std::size_t kExactHausdorffLimit = 2000;

struct HausdorffOptions {
  std::optional<std::size_t> sample;  // nodes per side
  std::uint64_t seed = 0;
};

struct HausdorffResult {
  Rational distance{0};
  Rational forward{0};   // h(A, B)
  Rational backward{0};  // h(B, A)
  bool approximate = false;
  std::size_t nodes_a = 0;
  std::size_t nodes_b = 0;
};

namespace detail {

inline std::vector<NodeIndex> pick_nodes(const Graph& g, std::optional<std::size_t> sample,
                                         std::uint64_t seed, bool& approximate) {
  std::vector<NodeIndex> all(g.size());
  std::iota(all.begin(), all.end(), NodeIndex{0});
  std::size_t cap = sample.value_or(g.size() > kExactHausdorffLimit ? kExactHausdorffLimit
                                                                     : g.size());
  if (cap >= all.size()) return all;
  approximate = true;
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::max<std::size_t>(cap, 1));
  std::sort(all.begin(), all.end());
  return all;
}

// max over a of min over b, skipping a as soon as its running minimum cannot
// raise the current maximum.
inline Rational directed_hausdorff(const std::vector<NodeSignature>& a,
                                   const std::vector<NodeSignature>& b,
                                   const WeightScheme& weights) {
  Rational worst(0);
  for (const auto& sa : a) {
    std::optional<Rational> best;
    for (const auto& sb : b) {
      Rational d = signature_distance(sa, sb, weights);
      if (!best || d < *best) best = d;
      if (*best <= worst) break;
    }
    if (*best > worst) worst = *best;
  }
  return worst;
}

}  // namespace detail

// max(h(A, B), h(B, A)) with h(A, B) = max_a min_b NED(a, b).
inline HausdorffResult hausdorff_graph_distance(const Graph& a, const Graph& b, int k,
                                                const WeightScheme& weights = WeightScheme::unit(),
                                                const HausdorffOptions& opt = {}) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff distance of an empty graph");
  if (a.directed() != b.directed())
    throw UsageError("hausdorff distance needs two graphs of the same kind");
  HausdorffResult r;
  auto na = detail::pick_nodes(a, opt.sample, opt.seed, r.approximate);
  auto nb = detail::pick_nodes(b, opt.sample, opt.seed + 1, r.approximate);
  r.nodes_a = na.size();
  r.nodes_b = nb.size();
  std::vector<NodeSignature> sa(na.size()), sb(nb.size());
  parallel_for(na.size(), [&](std::size_t i) { sa[i] = make_signature(a, na[i], k); });
  parallel_for(nb.size(), [&](std::size_t i) { sb[i] = make_signature(b, nb[i], k); });
  r.forward = detail::directed_hausdorff(sa, sb, weights);
  r.backward = detail::directed_hausdorff(sb, sa, weights);
  r.distance = std::max(r.forward, r.backward);
  return r;
}

}  // namespace ned
