#pragma once

// TED*: edit distance between level trees under leaf insertion, leaf
// deletion and same-level moves, computed bottom-up one level pair at a
// time (padding, canonization, bipartite matching, re-canonization).

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ned/assignment.hpp"
#include "ned/error.hpp"
#include "ned/level_tree.hpp"
#include "ned/weights.hpp"

namespace ned {

using CanonLabel = std::uint32_t;
using LabelCollection = std::vector<CanonLabel>;

// Costs of one level pair; level 1 is the root.
struct LevelCost {
  std::size_t size_u = 0;
  std::size_t size_v = 0;
  std::int64_t padding = 0;       // P_i
  std::int64_t matching_min = 0;  // m(G^2_i)
  std::int64_t matching = 0;      // M_i = (m_i - P_{i+1}) / 2
};

struct CostBreakdown {
  std::vector<LevelCost> levels;  // levels[0] is level 1
  Rational total{0};
};

struct TedStarResult {
  Rational distance{0};
  CostBreakdown breakdown;
};

// |A \ B| + |B \ A| for sorted multisets, duplicates counted.
inline std::size_t multiset_symmetric_difference(std::span<const CanonLabel> a,
                                                 std::span<const CanonLabel> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

namespace detail {

// Collections compare by size first, then element-wise on sorted contents.
inline bool collection_less(std::span<const CanonLabel> a, std::span<const CanonLabel> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Flattened sorted collections, one per node of the combined level.
struct Collections {
  std::vector<CanonLabel> data;
  std::vector<std::uint32_t> start{0};

  void clear() {
    data.clear();
    start.assign(1, 0);
  }
  std::size_t size() const { return start.size() - 1; }
  std::span<const CanonLabel> operator[](std::size_t i) const {
    return {data.data() + start[i], start[i + 1] - start[i]};
  }
  void close() {
    std::sort(data.begin() + start.back(), data.end());
    start.push_back(static_cast<std::uint32_t>(data.size()));
  }
};

inline void canonize(const Collections& c, std::vector<std::uint32_t>& order,
                     std::vector<CanonLabel>& labels) {
  const std::size_t n = c.size();
  order.resize(n);
  labels.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return collection_less(c[a], c[b]);
  });
  CanonLabel next = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (collection_less(c[order[i - 1]], c[order[i]])) ++next;
    labels[order[i]] = next;
  }
}

}  // namespace detail

// Labels 0, 1, 2, ... in increasing collection order; equal collections get
// equal labels. Element order inside a collection is irrelevant.
inline std::vector<CanonLabel> canonize_level(std::span<const LabelCollection> collections) {
  detail::Collections c;
  for (const auto& s : collections) {
    c.data.insert(c.data.end(), s.begin(), s.end());
    c.close();
  }
  std::vector<std::uint32_t> order;
  std::vector<CanonLabel> labels;
  detail::canonize(c, order, labels);
  return labels;
}

// Complete bipartite weights w(x, y) = |S(x) \ S(y)| + |S(y) \ S(x)|.
// Padded nodes enter with an empty collection.
inline CostMatrix<std::int64_t> build_bipartite_weights(std::span<const LabelCollection> left,
                                                        std::span<const LabelCollection> right) {
  if (left.size() != right.size())
    throw UsageError("bipartite sides must have equal size after padding");
  CostMatrix<std::int64_t> w(left.size());
  std::vector<LabelCollection> l(left.begin(), left.end()), r(right.begin(), right.end());
  for (auto& s : l) std::sort(s.begin(), s.end());
  for (auto& s : r) std::sort(s.begin(), s.end());
  for (std::size_t x = 0; x < l.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      w(x, y) = static_cast<std::int64_t>(multiset_symmetric_difference(l[x], r[y]));
  return w;
}

namespace detail {

// Parent arrays per level (root level first) in a layout that depends only
// on the tree's isomorphism class.
struct Layout {
  std::vector<std::vector<std::int32_t>> parent;
  int k = 1;

  int depth_levels() const noexcept { return static_cast<int>(parent.size()); }
  std::size_t level_size(int i) const noexcept {
    return i < depth_levels() ? parent[static_cast<std::size_t>(i)].size() : 0;
  }
  friend auto operator<=>(const Layout&, const Layout&) = default;
};

// Bottom-up labels as in Algorithm 2 within one tree, then top-down: each
// level is sorted by (position of parent, own label). Siblings with equal
// labels are isomorphic, so their relative order does not matter.
class Canonicalizer {
 public:
  void run(const LevelTree& t, Layout& out) {
    const int d = t.depth_levels();
    labels_.resize(static_cast<std::size_t>(d));
    labels_[static_cast<std::size_t>(d - 1)].assign(t.level_size(d - 1), 0);
    for (int i = d - 2; i >= 0; --i) {
      coll_.clear();
      const auto& parents = t.level(i + 1).parent;
      const auto& below = labels_[static_cast<std::size_t>(i) + 1];
      std::size_t c = 0;
      for (std::size_t x = 0; x < t.level_size(i); ++x) {
        while (c < parents.size() && static_cast<std::size_t>(parents[c]) == x)
          coll_.data.push_back(below[c++]);
        coll_.close();
      }
      canonize(coll_, order_, labels_[static_cast<std::size_t>(i)]);
    }

    out.k = t.k();
    out.parent.resize(static_cast<std::size_t>(d));
    out.parent[0].assign(1, LevelTree::kNoParent);
    pos_.assign(1, 0);
    for (int i = 1; i < d; ++i) {
      const auto& parents = t.level(i).parent;
      const auto& lab = labels_[static_cast<std::size_t>(i)];
      order_.resize(parents.size());
      for (std::uint32_t j = 0; j < parents.size(); ++j) order_[j] = j;
      std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto pa = pos_[static_cast<std::size_t>(parents[a])];
        const auto pb = pos_[static_cast<std::size_t>(parents[b])];
        return pa != pb ? pa < pb : lab[a] < lab[b];
      });
      auto& np = out.parent[static_cast<std::size_t>(i)];
      np.resize(parents.size());
      next_pos_.resize(parents.size());
      for (std::uint32_t r = 0; r < order_.size(); ++r) {
        next_pos_[order_[r]] = r;
        np[r] = static_cast<std::int32_t>(pos_[static_cast<std::size_t>(parents[order_[r]])]);
      }
      pos_.swap(next_pos_);
    }
  }

 private:
  Collections coll_;
  std::vector<std::uint32_t> order_, pos_, next_pos_;
  std::vector<std::vector<CanonLabel>> labels_;
};

inline Layout canonical_layout(const LevelTree& t) {
  Layout out;
  Canonicalizer().run(t, out);
  return out;
}

// Per-call scratch for one TED* evaluation; reused across calls on a thread.
class TedStarEngine {
 public:
  // Fills `levels` (root level first); totals are weighted by the caller.
  void run(const Layout& tu, const Layout& tv, std::vector<LevelCost>& levels) {
    const int k = std::max(tu.k, tv.k);
    levels.assign(static_cast<std::size_t>(k), LevelCost{});
    below_u_.clear();
    below_v_.clear();
    std::int64_t pad_below = 0;

    for (int i = k - 1; i >= 0; --i) {
      const std::size_t nu = tu.level_size(i);
      const std::size_t nv = tv.level_size(i);
      const std::size_t n = std::max(nu, nv);
      LevelCost& lc = levels[static_cast<std::size_t>(i)];
      lc.size_u = nu;
      lc.size_v = nv;
      lc.padding = static_cast<std::int64_t>(nu > nv ? nu - nv : nv - nu);

      // Children of real nodes only; padded nodes have no parent.
      coll_.clear();
      append_side(tu, i, nu, n, below_u_);
      append_side(tv, i, nv, n, below_v_);
      canonize(coll_, order_, labels_);

      bool all_empty = coll_.data.empty();
      if (all_empty) {
        match_.resize(n);
        for (std::uint32_t x = 0; x < n; ++x) match_[x] = x;
        lc.matching_min = 0;
      } else {
        build_weights(n);
        auto a = min_cost_perfect_matching(w_);
        lc.matching_min = a.cost;
        match_ = std::move(a.row_to_col);
      }

      const std::int64_t diff = lc.matching_min - pad_below;
      if (diff < 0 || diff % 2 != 0)
        throw InvariantError("TED*: m(G2) - P_{i+1} = " + std::to_string(diff) +
                             " is negative or odd at level " + std::to_string(i + 1));
      lc.matching = diff / 2;

      // Re-canonize the smaller side through the matching.
      below_u_.assign(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(n));
      below_v_.assign(labels_.begin() + static_cast<std::ptrdiff_t>(n), labels_.end());
      if (nu < nv) {
        for (std::size_t x = 0; x < n; ++x) below_u_[x] = below_v_[match_[x]];
      } else {
        for (std::size_t x = 0; x < n; ++x) below_v_[match_[x]] = below_u_[x];
      }
      pad_below = lc.padding;
    }
  }

 private:
  void append_side(const Layout& t, int i, std::size_t real, std::size_t n,
                   const std::vector<CanonLabel>& below) {
    if (real > 0 && i + 1 < t.depth_levels()) {
      const auto& parents = t.parent[static_cast<std::size_t>(i) + 1];
      std::size_t c = 0;
      for (std::size_t x = 0; x < real; ++x) {
        while (c < parents.size() && static_cast<std::size_t>(parents[c]) == x)
          coll_.data.push_back(below[c++]);
        coll_.close();
      }
    } else {
      for (std::size_t x = 0; x < real; ++x) coll_.close();
    }
    for (std::size_t x = real; x < n; ++x) coll_.close();
  }

  // Nodes sharing a label share a collection, so weights are computed once
  // per (left label, right label) pair.
  void build_weights(std::size_t n) {
    CanonLabel max_label = 0;
    for (auto l : labels_) max_label = std::max(max_label, l);
    rep_.assign(static_cast<std::size_t>(max_label) + 1, UINT32_MAX);
    for (std::uint32_t i = 0; i < labels_.size(); ++i)
      if (rep_[labels_[i]] == UINT32_MAX) rep_[labels_[i]] = i;
    const std::size_t L = rep_.size();
    pair_.assign(L * L, -1);
    w_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      const CanonLabel lx = labels_[x];
      for (std::size_t y = 0; y < n; ++y) {
        const CanonLabel ly = labels_[n + y];
        auto& cached = pair_[lx * L + ly];
        if (cached < 0)
          cached = static_cast<std::int64_t>(
              multiset_symmetric_difference(coll_[rep_[lx]], coll_[rep_[ly]]));
        w_(x, y) = cached;
      }
    }
  }

  Collections coll_;
  std::vector<std::uint32_t> order_;
  std::vector<CanonLabel> labels_;
  std::vector<CanonLabel> below_u_, below_v_;
  std::vector<std::uint32_t> match_;
  std::vector<std::uint32_t> rep_;
  std::vector<std::int64_t> pair_;
  CostMatrix<std::int64_t> w_;
};

inline Rational weigh(const std::vector<LevelCost>& levels, const WeightScheme& ws) {
  if (ws.is_unit()) {
    std::int64_t s = 0;
    for (const auto& lc : levels) s += lc.padding + lc.matching;
    return Rational(s);
  }
  Rational total(0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int level = static_cast<int>(i) + 1;
    total += ws.insert_delete(level) * levels[i].padding + ws.move(level) * levels[i].matching;
  }
  return total;
}

}  // namespace detail

namespace detail {

// Total order on isomorphism classes: level sizes first, then the canonical
// layouts. Used to pick one evaluation orientation per unordered pair.
inline bool orient_swapped(const Layout& a, const Layout& b) {
  const int k = std::max(a.depth_levels(), b.depth_levels());
  for (int i = 0; i < k; ++i)
    if (a.level_size(i) != b.level_size(i)) return b.level_size(i) < a.level_size(i);
  return b.parent < a.parent;
}

struct Scratch {
  Canonicalizer canon;
  Layout lu, lv;
  TedStarEngine engine;
  std::vector<LevelCost> levels;
};

inline Scratch& thread_scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace detail

// Algorithm 1 run with t1 as the u-side and t2 as the v-side. Both trees are
// first brought into a canonical node order, so the result depends only on
// their isomorphism classes. Matching ties are broken lexicographically, and
// on some pairs the chosen optimum changes later levels, so this can differ
// from the swapped call. ted_star evaluates every pair in a fixed
// orientation instead.
inline TedStarResult ted_star_as_given(const LevelTree& t1, const LevelTree& t2,
                                       const WeightScheme& weights = WeightScheme::unit()) {
  TedStarResult r;
  detail::TedStarEngine engine;
  engine.run(detail::canonical_layout(t1), detail::canonical_layout(t2), r.breakdown.levels);
  r.distance = r.breakdown.total = detail::weigh(r.breakdown.levels, weights);
  return r;
}

// Full TED* with its per-level breakdown. Levels beyond a tree's depth are
// empty; the number of level pairs is max(t1.k(), t2.k()). The breakdown's
// size_u/size_v always refer to t1/t2.
inline TedStarResult ted_star(const LevelTree& t1, const LevelTree& t2,
                              const WeightScheme& weights = WeightScheme::unit()) {
  detail::Layout a = detail::canonical_layout(t1), b = detail::canonical_layout(t2);
  const bool swapped = detail::orient_swapped(a, b);
  TedStarResult r;
  detail::TedStarEngine engine;
  engine.run(swapped ? b : a, swapped ? a : b, r.breakdown.levels);
  if (swapped)
    for (auto& lc : r.breakdown.levels) std::swap(lc.size_u, lc.size_v);
  r.distance = r.breakdown.total = detail::weigh(r.breakdown.levels, weights);
  return r;
}

// Same value as ted_star(...).distance, reusing per-thread scratch space.
inline Rational ted_star_distance_only(const LevelTree& t1, const LevelTree& t2,
                                       const WeightScheme& weights = WeightScheme::unit()) {
  auto& s = detail::thread_scratch();
  s.canon.run(t1, s.lu);
  s.canon.run(t2, s.lv);
  if (detail::orient_swapped(s.lu, s.lv))
    s.engine.run(s.lv, s.lu, s.levels);
  else
    s.engine.run(s.lu, s.lv, s.levels);
  return detail::weigh(s.levels, weights);
}

}  // namespace ned
