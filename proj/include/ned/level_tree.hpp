#pragma once

// Rooted unordered trees stored level by level, k-adjacent tree extraction
// and the balanced-parenthesis literal format.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ned/error.hpp"
#include "ned/graph.hpp"

namespace ned {

// Level 0 holds the root alone; level i holds the nodes at depth i. Within a
// level nodes are ordered by parent index, so the children of a node form a
// contiguous run of the next level.
class LevelTree {
 public:
  static constexpr std::int32_t kNoParent = -1;
  static constexpr NodeIndex kNoOrigin = std::numeric_limits<NodeIndex>::max();

  struct Level {
    std::vector<std::int32_t> parent;
    std::vector<NodeIndex> origin;  // graph node per tree node, or kNoOrigin
  };

  LevelTree() : LevelTree(std::vector<Level>{Level{{kNoParent}, {kNoOrigin}}}, 1) {}

  // `k` is the nominal level count; levels past the materialized ones are
  // empty. Validates the structural invariants.
  LevelTree(std::vector<Level> levels, int k) : levels_(std::move(levels)), k_(k) {
    if (levels_.empty() || levels_[0].parent.size() != 1 ||
        levels_[0].parent[0] != kNoParent)
      throw UsageError("level tree must have exactly one root");
    while (levels_.size() > 1 && levels_.back().parent.empty()) levels_.pop_back();
    if (k_ < static_cast<int>(levels_.size())) k_ = static_cast<int>(levels_.size());
    for (std::size_t i = 1; i < levels_.size(); ++i) {
      const auto& lv = levels_[i];
      if (lv.parent.empty()) throw UsageError("empty interior level");
      const auto above = static_cast<std::int32_t>(levels_[i - 1].parent.size());
      for (std::size_t j = 0; j < lv.parent.size(); ++j) {
        if (lv.parent[j] < 0 || lv.parent[j] >= above)
          throw UsageError("invalid parent index at level " + std::to_string(i));
        if (j > 0 && lv.parent[j] < lv.parent[j - 1])
          throw UsageError("level " + std::to_string(i) + " not grouped by parent");
      }
    }
    for (auto& lv : levels_)
      if (lv.origin.size() != lv.parent.size()) lv.origin.assign(lv.parent.size(), kNoOrigin);
  }

  // Nominal level count (the k of a k-adjacent tree).
  int k() const noexcept { return k_; }
  // Levels actually holding nodes.
  int depth_levels() const noexcept { return static_cast<int>(levels_.size()); }

  std::size_t level_size(int i) const noexcept {
    return i < depth_levels() ? levels_[static_cast<std::size_t>(i)].parent.size() : 0;
  }
  const Level& level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
  const std::vector<Level>& levels() const noexcept { return levels_; }

  std::size_t node_count() const noexcept {
    std::size_t n = 0;
    for (const auto& lv : levels_) n += lv.parent.size();
    return n;
  }

  // offsets[p]..offsets[p+1] index the children of node p (level i) in
  // level i + 1.
  std::vector<std::uint32_t> child_offsets(int i) const {
    std::vector<std::uint32_t> off(level_size(i) + 1, 0);
    if (i + 1 < depth_levels())
      for (auto p : levels_[static_cast<std::size_t>(i) + 1].parent) ++off[static_cast<std::size_t>(p) + 1];
    for (std::size_t j = 1; j < off.size(); ++j) off[j] += off[j - 1];
    return off;
  }

  // Same tree with its nominal level count changed; deeper levels are cut.
  LevelTree truncated(int k) const {
    std::vector<Level> lv(levels_.begin(),
                          levels_.begin() + std::min<std::ptrdiff_t>(k, depth_levels()));
    return LevelTree(std::move(lv), k);
  }

  // Structural equality of the stored layout (not isomorphism).
  friend bool operator==(const LevelTree& a, const LevelTree& b) {
    if (a.k_ != b.k_ || a.levels_.size() != b.levels_.size()) return false;
    for (std::size_t i = 0; i < a.levels_.size(); ++i)
      if (a.levels_[i].parent != b.levels_[i].parent) return false;
    return true;
  }

 private:
  std::vector<Level> levels_;
  int k_ = 1;
};

// Breadth-first tree from `root` truncated to k levels. Every graph node
// appears at most once; neighbors are expanded in index order.
inline LevelTree extract_k_adjacent_tree(const Graph& g, NodeIndex root, int k,
                                         Direction mode) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (root >= g.size()) throw UsageError("root node out of range");
  if ((mode == Direction::undirected) == g.directed())
    throw UsageError(std::string("direction mode '") + to_string(mode) +
                     "' does not match the graph kind");

  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  if (stamp.size() < g.size()) stamp.assign(g.size(), 0);
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }

  std::vector<LevelTree::Level> levels;
  levels.push_back({{LevelTree::kNoParent}, {root}});
  stamp[root] = epoch;
  for (int depth = 1; depth < k; ++depth) {
    const auto& prev = levels.back().origin;
    LevelTree::Level next;
    for (std::size_t p = 0; p < prev.size(); ++p) {
      for (NodeIndex w : g.neighbors(prev[p], mode)) {
        if (stamp[w] == epoch) continue;
        stamp[w] = epoch;
        next.parent.push_back(static_cast<std::int32_t>(p));
        next.origin.push_back(w);
      }
    }
    if (next.parent.empty()) break;
    levels.push_back(std::move(next));
  }
  return LevelTree(std::move(levels), k);
}

// Level tree from a parent array (parent[0] == -1 for the root, any node
// order). Children keep their relative order within each level.
inline LevelTree from_parent_array(const std::vector<int>& parent, int k = 0) {
  const std::size_t n = parent.size();
  if (n == 0 || parent[0] != -1) throw UsageError("parent array must start with the root");
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t v = 1; v < n; ++v) {
    if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= n)
      throw UsageError("invalid parent index in parent array");
    kids[static_cast<std::size_t>(parent[v])].push_back(v);
  }
  std::vector<LevelTree::Level> levels{{{LevelTree::kNoParent}, {}}};
  std::vector<std::size_t> frontier{0};
  std::size_t seen = 1;
  while (true) {
    LevelTree::Level next;
    std::vector<std::size_t> nodes;
    for (std::size_t p = 0; p < frontier.size(); ++p)
      for (auto c : kids[frontier[p]]) {
        next.parent.push_back(static_cast<std::int32_t>(p));
        nodes.push_back(c);
      }
    if (nodes.empty()) break;
    seen += nodes.size();
    levels.push_back(std::move(next));
    frontier = std::move(nodes);
  }
  if (seen != n) throw UsageError("parent array is not a tree rooted at node 0");
  return LevelTree(std::move(levels), k);
}

// Parses "(()())"-style literals. Nominal k is the literal's depth unless a
// larger one is requested.
inline LevelTree parse_tree_literal(std::string_view s, int k = 0) {
  if (s.empty() || s.front() != '(')
    throw ParseError("tree literal must start with '(' at position 0", 0);

  // Nested structure first, then level-order layout.
  std::vector<std::int32_t> parent_of;   // in order of '(' occurrences
  std::vector<std::int32_t> depth_of;
  std::vector<std::int32_t> open;
  for (std::size_t pos = 0; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '(') {
      if (open.empty() && !parent_of.empty())
        throw ParseError("trailing characters after tree literal at position " +
                             std::to_string(pos),
                         pos);
      parent_of.push_back(open.empty() ? -1 : open.back());
      depth_of.push_back(static_cast<std::int32_t>(open.size()));
      open.push_back(static_cast<std::int32_t>(parent_of.size() - 1));
    } else if (c == ')') {
      if (open.empty())
        throw ParseError("unbalanced ')' at position " + std::to_string(pos), pos);
      open.pop_back();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' at position " +
                           std::to_string(pos),
                       pos);
    }
  }
  if (!open.empty())
    throw ParseError("unbalanced tree literal: missing ')' at position " +
                         std::to_string(s.size()),
                     s.size());

  std::int32_t max_depth = *std::max_element(depth_of.begin(), depth_of.end());
  std::vector<LevelTree::Level> levels(static_cast<std::size_t>(max_depth) + 1);
  std::vector<std::int32_t> slot(parent_of.size(), -1);
  levels[0].parent.push_back(LevelTree::kNoParent);
  slot[0] = 0;
  // Breadth-first over the nested structure keeps each level grouped by parent.
  std::vector<std::vector<std::int32_t>> kids(parent_of.size());
  for (std::size_t v = 1; v < parent_of.size(); ++v)
    kids[static_cast<std::size_t>(parent_of[v])].push_back(static_cast<std::int32_t>(v));
  std::vector<std::int32_t> frontier{0};
  for (std::size_t d = 1; d < levels.size(); ++d) {
    std::vector<std::int32_t> next;
    for (auto v : frontier)
      for (auto c : kids[static_cast<std::size_t>(v)]) {
        slot[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(levels[d].parent.size());
        levels[d].parent.push_back(slot[static_cast<std::size_t>(v)]);
        next.push_back(c);
      }
    frontier = std::move(next);
  }
  return LevelTree(std::move(levels), std::max(k, max_depth + 1));
}

namespace detail {

// Canonical literal of every node of level `i`, children ordered by
// (length, lexicographic) of their own literals.
inline std::vector<std::string> canonical_literals(const LevelTree& t) {
  std::vector<std::string> below;
  for (int i = t.depth_levels() - 1; i >= 0; --i) {
    auto off = t.child_offsets(i);
    std::vector<std::string> cur(t.level_size(i));
    std::vector<const std::string*> kids;
    for (std::size_t p = 0; p < cur.size(); ++p) {
      kids.clear();
      for (auto c = off[p]; c < off[p + 1]; ++c) kids.push_back(&below[c]);
      std::sort(kids.begin(), kids.end(), [](const std::string* a, const std::string* b) {
        return a->size() != b->size() ? a->size() < b->size() : *a < *b;
      });
      std::string& s = cur[p];
      s.push_back('(');
      for (auto* k : kids) s += *k;
      s.push_back(')');
    }
    below = std::move(cur);
  }
  return below;
}

}  // namespace detail

// Canonical (AHU) literal: isomorphic trees serialize identically.
inline std::string to_tree_literal(const LevelTree& t) {
  return detail::canonical_literals(t).front();
}

// One line per level listing the graph labels of its nodes as
// "label^parentpos"; used by the `ktree --annotate` output.
inline std::string annotate(const LevelTree& t, const Graph& g) {
  std::string out;
  for (int i = 0; i < t.depth_levels(); ++i) {
    const auto& lv = t.level(i);
    out += "L" + std::to_string(i + 1) + ":";
    for (std::size_t j = 0; j < lv.parent.size(); ++j) {
      out += ' ';
      out += lv.origin[j] == LevelTree::kNoOrigin ? std::string("?") : g.label(lv.origin[j]);
      if (lv.parent[j] >= 0) out += "^" + std::to_string(lv.parent[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ned
