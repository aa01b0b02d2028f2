#pragma once

// Exhaustive ground truth on tiny trees: AHU canonical forms, tree
// enumeration, and exact TED*, unordered TED and tree GED by search.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ned/error.hpp"
#include "ned/level_tree.hpp"

namespace ned {

struct CanonicalForm {
  std::string literal;
  auto operator<=>(const CanonicalForm&) const = default;
};

inline CanonicalForm ahu_canonical(const LevelTree& t) { return {to_tree_literal(t)}; }

// Outcome of a bounded exact search: either the value, or "at least bound".
struct BoundedResult {
  bool exact = false;
  int value = 0;  // the distance when exact, else the exhausted bound

  friend bool operator==(const BoundedResult&, const BoundedResult&) = default;
};

namespace oracle_detail {

// Parent-array trees in preorder: node 0 is the root and every parent index
// is smaller than its child's.
struct PTree {
  std::vector<int> parent;

  int size() const { return static_cast<int>(parent.size()); }
};

inline PTree from_level_tree(const LevelTree& t) {
  // Preorder numbering via DFS over the level layout.
  PTree out;
  std::vector<std::vector<std::uint32_t>> offs;
  for (int i = 0; i < t.depth_levels(); ++i) offs.push_back(t.child_offsets(i));
  std::function<void(int, std::uint32_t, int)> dfs = [&](int level, std::uint32_t idx, int par) {
    int me = out.size();
    out.parent.push_back(par);
    if (level + 1 < t.depth_levels())
      for (auto c = offs[static_cast<std::size_t>(level)][idx];
           c < offs[static_cast<std::size_t>(level)][idx + 1]; ++c)
        dfs(level + 1, c, me);
  };
  dfs(0, 0, -1);
  return out;
}

inline std::vector<std::vector<int>> children_of(const std::vector<int>& parent) {
  std::vector<std::vector<int>> kids(parent.size());
  for (std::size_t v = 1; v < parent.size(); ++v)
    if (parent[v] >= 0) kids[static_cast<std::size_t>(parent[v])].push_back(static_cast<int>(v));
  return kids;
}

// Canonical literal of a parent array rooted at node 0; entries < -1 mark
// removed nodes and are skipped.
inline std::string canon(const std::vector<int>& parent) {
  auto kids = children_of(parent);
  std::function<std::string(int)> rec = [&](int v) {
    std::vector<std::string> parts;
    for (int c : kids[static_cast<std::size_t>(v)]) parts.push_back(rec(c));
    std::sort(parts.begin(), parts.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::string s = "(";
    for (auto& p : parts) s += p;
    s += ')';
    return s;
  };
  return rec(0);
}

// Parent array (preorder) of a balanced literal.
inline std::vector<int> parse_parents(const std::string& lit) {
  std::vector<int> parent, stack;
  for (char c : lit) {
    if (c == '(') {
      parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(static_cast<int>(parent.size()) - 1);
    } else {
      stack.pop_back();
    }
  }
  return parent;
}

inline std::vector<int> depths(const std::vector<int>& parent) {
  std::vector<int> d(parent.size(), 0);
  for (std::size_t v = 1; v < parent.size(); ++v) d[v] = d[static_cast<std::size_t>(parent[v])] + 1;
  return d;
}

inline std::vector<int> level_counts(const std::vector<int>& parent) {
  std::vector<int> c;
  for (int d : depths(parent)) {
    if (static_cast<std::size_t>(d) >= c.size()) c.resize(static_cast<std::size_t>(d) + 1, 0);
    ++c[static_cast<std::size_t>(d)];
  }
  return c;
}

// Removes node `v` (a leaf) keeping preorder numbering valid.
inline std::vector<int> erase_node(const std::vector<int>& parent, int v) {
  std::vector<int> out;
  out.reserve(parent.size() - 1);
  for (std::size_t u = 0; u < parent.size(); ++u) {
    if (static_cast<int>(u) == v) continue;
    int p = parent[u];
    out.push_back(p > v ? p - 1 : p);
  }
  return out;
}

}  // namespace oracle_detail

// Every rooted unordered tree with at most n_max nodes and depth (edges on
// the longest root path) at most depth_max, once each, ordered by size then
// canonical literal.
inline std::vector<LevelTree> enumerate_trees(int n_max, int depth_max) {
  if (n_max > 9) throw UsageError("enumerate_trees: n_max must be <= 9");
  std::vector<LevelTree> out;
  if (n_max < 1) return out;
  auto by_len = [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::set<std::string, decltype(by_len)> layer(by_len);
  layer.insert("()");
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& lit : layer) out.push_back(parse_tree_literal(lit));
    if (n == n_max) break;
    std::set<std::string, decltype(by_len)> next(by_len);
    for (const auto& lit : layer) {
      auto parent = oracle_detail::parse_parents(lit);
      auto d = oracle_detail::depths(parent);
      for (std::size_t v = 0; v < parent.size(); ++v) {
        if (d[v] + 1 > depth_max) continue;
        auto grown = parent;
        grown.push_back(static_cast<int>(v));
        next.insert(oracle_detail::canon(grown));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Minimum number of {insert leaf, delete leaf, move a node to another parent
// on the parent's level} turning t1 into a tree isomorphic to t2. A* over
// canonical tree states with the level-count gap as (consistent) heuristic;
// gives up once the frontier exceeds `budget`.
inline BoundedResult exact_ted_star(const LevelTree& t1, const LevelTree& t2, int budget = 24) {
  using namespace oracle_detail;
  if (t1.node_count() > 8 || t2.node_count() > 8)
    throw UsageError("exact_ted_star: trees are limited to 8 nodes");

  const std::string goal = to_tree_literal(t2);
  const auto goal_counts = level_counts(parse_parents(goal));
  auto heuristic = [&](const std::vector<int>& parent) {
    auto c = level_counts(parent);
    int h = 0;
    for (std::size_t i = 0; i < std::max(c.size(), goal_counts.size()); ++i) {
      int a = i < c.size() ? c[i] : 0;
      int b = i < goal_counts.size() ? goal_counts[i] : 0;
      h += std::abs(a - b);
    }
    return h;
  };

  const std::string start = to_tree_literal(t1);
  std::unordered_map<std::string, int> best_g;
  using Item = std::tuple<int, int, std::string>;  // f, -g, state
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  best_g[start] = 0;
  open.emplace(heuristic(parse_parents(start)), 0, start);

  while (!open.empty()) {
    auto [f, neg_g, state] = open.top();
    open.pop();
    const int g = -neg_g;
    if (best_g[state] < g) continue;
    if (state == goal) return {true, g};
    if (f > budget) return {false, budget};

    const auto parent = parse_parents(state);
    const auto depth = depths(parent);
    const int n = static_cast<int>(parent.size());
    auto push = [&](const std::vector<int>& next) {
      std::string key = canon(next);
      auto it = best_g.find(key);
      if (it != best_g.end() && it->second <= g + 1) return;
      best_g[key] = g + 1;
      // Moves can break preorder numbering; depths come from the key.
      const int h = heuristic(parse_parents(key));
      open.emplace(g + 1 + h, -(g + 1), std::move(key));
    };

    // Insert a leaf under any node; a new last child keeps preorder valid
    // after re-canonization, so append and let canon() sort it out.
    for (int v = 0; v < n; ++v) {
      auto next = parent;
      next.push_back(v);
      push(next);
    }
    std::vector<char> has_child(static_cast<std::size_t>(n), 0);
    for (int v = 1; v < n; ++v) has_child[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] = 1;
    for (int v = 1; v < n; ++v)
      if (!has_child[static_cast<std::size_t>(v)]) push(erase_node(parent, v));
    // Move: reattach x's subtree to another node on its parent's level.
    for (int x = 1; x < n; ++x) {
      if (depth[static_cast<std::size_t>(x)] < 2) continue;
      for (int p = 0; p < n; ++p) {
        if (p == parent[static_cast<std::size_t>(x)] ||
            depth[static_cast<std::size_t>(p)] != depth[static_cast<std::size_t>(x)] - 1)
          continue;
        auto next = parent;
        next[static_cast<std::size_t>(x)] = p;
        push(next);
      }
    }
  }
  return {false, budget};
}

// Unit-cost unordered tree edit distance (insert/delete, no relabel) as
// |t1| + |t2| - 2 |M*| with M* a maximum ancestor-preserving mapping that
// sends root to root.
inline int exact_unordered_ted(const LevelTree& t1, const LevelTree& t2) {
  using namespace oracle_detail;
  if (t1.node_count() > 8 || t2.node_count() > 8)
    throw UsageError("exact_unordered_ted: trees are limited to 8 nodes");
  const PTree a = from_level_tree(t1), b = from_level_tree(t2);

  auto closure = [](const PTree& t, std::vector<std::uint32_t>& anc, std::vector<std::uint32_t>& desc) {
    anc.assign(static_cast<std::size_t>(t.size()), 0);
    desc.assign(static_cast<std::size_t>(t.size()), 0);
    for (int v = 1; v < t.size(); ++v) {
      int p = t.parent[static_cast<std::size_t>(v)];
      anc[static_cast<std::size_t>(v)] = anc[static_cast<std::size_t>(p)] | (1u << p);
    }
    for (int v = 0; v < t.size(); ++v)
      for (int u = 0; u < t.size(); ++u)
        if (anc[static_cast<std::size_t>(u)] & (1u << v)) desc[static_cast<std::size_t>(v)] |= 1u << u;
  };
  std::vector<std::uint32_t> anc_a, desc_a, anc_b, desc_b;
  closure(a, anc_a, desc_a);
  closure(b, anc_b, desc_b);

  std::vector<std::int8_t> memo(1u << 16, -1);
  // Largest mapping between the sub-forests induced by masks A and B.
  std::function<int(std::uint32_t, std::uint32_t)> best = [&](std::uint32_t A, std::uint32_t B) -> int {
    if (A == 0 || B == 0) return 0;
    auto& m = memo[(A << 8) | B];
    if (m >= 0) return m;
    const int r = std::countr_zero(A);  // preorder: lowest index is a root of A
    const std::uint32_t rbit = 1u << r;
    int res = best(A & ~rbit, B);
    for (std::uint32_t rest = B; rest; rest &= rest - 1) {
      const int s = std::countr_zero(rest);
      const std::uint32_t sbit = 1u << s;
      int v = 1 + best(A & desc_a[static_cast<std::size_t>(r)], B & desc_b[static_cast<std::size_t>(s)]) +
              best(A & ~desc_a[static_cast<std::size_t>(r)] & ~rbit,
                   B & ~desc_b[static_cast<std::size_t>(s)] & ~sbit & ~anc_b[static_cast<std::size_t>(s)]);
      res = std::max(res, v);
    }
    m = static_cast<std::int8_t>(res);
    return res;
  };
  const int mapped = 1 + best(desc_a[0], desc_b[0]);
  return a.size() + b.size() - 2 * mapped;
}

// Unit-cost graph edit distance between the two trees viewed as unlabeled
// undirected graphs (node insert/delete of isolated nodes, edge
// insert/delete). Mapping an extra node pair never hurts, so only injections
// of the smaller tree into the larger one are searched.
inline int exact_ged_on_trees(const LevelTree& t1, const LevelTree& t2) {
  using namespace oracle_detail;
  if (t1.node_count() > 7 || t2.node_count() > 7)
    throw UsageError("exact_ged_on_trees: trees are limited to 7 nodes");
  PTree a = from_level_tree(t1), b = from_level_tree(t2);
  if (a.size() > b.size()) std::swap(a, b);
  const int na = a.size(), nb = b.size();
  std::vector<std::vector<char>> adj_b(static_cast<std::size_t>(nb), std::vector<char>(static_cast<std::size_t>(nb), 0));
  for (int v = 1; v < nb; ++v) {
    int p = b.parent[static_cast<std::size_t>(v)];
    adj_b[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)] = adj_b[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] = 1;
  }

  std::vector<int> image(static_cast<std::size_t>(na), -1);
  std::vector<char> used(static_cast<std::size_t>(nb), 0);
  int best_kept = 0;
  // Preorder: a node's parent is assigned before the node itself.
  std::function<void(int, int)> dfs = [&](int v, int kept) {
    if (v == na) {
      best_kept = std::max(best_kept, kept);
      return;
    }
    if (kept + (na - v) <= best_kept) return;
    for (int w = 0; w < nb; ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      image[static_cast<std::size_t>(v)] = w;
      int gain = v > 0 && adj_b[static_cast<std::size_t>(w)][static_cast<std::size_t>(image[static_cast<std::size_t>(a.parent[static_cast<std::size_t>(v)])])] ? 1 : 0;
      dfs(v + 1, kept + gain);
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  dfs(0, 0);
  const int edges_a = na - 1, edges_b = nb - 1;
  return (nb - na) + edges_a + edges_b - 2 * best_kept;
}

}  // namespace ned
