#pragma once

// Vantage-point tree: exact k-nearest-neighbor and range search in any
// metric space. Pruning relies only on the triangle inequality.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <iterator>
#include <random>
#include <type_traits>
#include <utility>
#include <vector>

#include "ned/error.hpp"
#include "ned/graph.hpp"
#include "ned/ned.hpp"
#include "ned/weights.hpp"

namespace ned {

template <class Dist>
struct Neighbor {
  std::uint32_t id;
  Dist distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

template <class Dist>
struct QueryResult {
  std::vector<Neighbor<Dist>> neighbors;  // ascending (distance, id)
  std::size_t evaluations = 0;            // metric calls made by the query
};

// `Metric` is callable as metric(const Item&, const Item&) -> Dist.
template <class Item, class Metric>
class VpTree {
 public:
  using Dist = std::invoke_result_t<const Metric&, const Item&, const Item&>;
  static constexpr std::size_t kLeafSize = 16;

  struct Entry {
    std::uint32_t id;
    Item item;
  };

  VpTree(std::vector<Entry> entries, Metric metric, std::uint64_t seed)
      : entries_(std::move(entries)), metric_(std::move(metric)) {
    if (entries_.empty()) throw DomainError("cannot index an empty collection");
    std::vector<std::uint32_t> idx(entries_.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::mt19937_64 rng(seed);
    order_.reserve(idx.size());
    root_ = build(idx, rng);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Metric& metric() const noexcept { return metric_; }

  // The l nearest entries, ties broken by ascending id. l larger than the
  // index returns everything.
  QueryResult<Dist> knn(const Item& q, std::size_t l) const {
    if (l == 0) throw UsageError("knn: l must be >= 1");
    QueryResult<Dist> r;
    std::vector<Neighbor<Dist>> heap;  // max-heap on (distance, id)
    auto worse = [](const Neighbor<Dist>& a, const Neighbor<Dist>& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    };
    auto offer = [&](std::uint32_t slot, const Dist& d) {
      Neighbor<Dist> n{entries_[slot].id, d};
      if (heap.size() < l) {
        heap.push_back(n);
        std::push_heap(heap.begin(), heap.end(), worse);
      } else if (worse(n, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        heap.back() = n;
        std::push_heap(heap.begin(), heap.end(), worse);
      }
    };
    // Anything at distance <= tau may still enter (id tie-break).
    auto tau = [&]() -> std::optional<Dist> {
      if (heap.size() < l) return std::nullopt;
      return heap.front().distance;
    };
    search(root_, q, r.evaluations, offer, tau);
    std::sort(heap.begin(), heap.end(), worse);
    r.neighbors = std::move(heap);
    return r;
  }

  // All entries within distance r (inclusive), ascending (distance, id).
  QueryResult<Dist> range_query(const Item& q, const Dist& radius) const {
    QueryResult<Dist> r;
    auto offer = [&](std::uint32_t slot, const Dist& d) {
      if (d <= radius) r.neighbors.push_back({entries_[slot].id, d});
    };
    auto tau = [&]() -> std::optional<Dist> { return radius; };
    search(root_, q, r.evaluations, offer, tau);
    std::sort(r.neighbors.begin(), r.neighbors.end(), [](const auto& a, const auto& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    return r;
  }

  // Every entry with its distance to q, ascending (distance, id); the
  // reference answer for knn and range_query.
  std::vector<Neighbor<Dist>> linear_scan(const Item& q) const {
    std::vector<Neighbor<Dist>> all;
    all.reserve(entries_.size());
    for (const auto& e : entries_) all.push_back({e.id, metric_(q, e.item)});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    return all;
  }

  // Checks the partition invariant of every internal node.
  bool verify() const { return root_ < 0 || verify(root_); }

  // Shape fingerprint for determinism checks: vantage ids and bucket
  // contents in build order.
  std::vector<std::uint32_t> layout() const {
    std::vector<std::uint32_t> out;
    for (const auto& n : nodes_) {
      out.push_back(n.leaf ? 1u : 0u);
      if (!n.leaf) out.push_back(entries_[n.vantage].id);
      for (auto i = n.begin; i < n.end; ++i) out.push_back(entries_[order_[i]].id);
    }
    return out;
  }

 private:
  struct Node {
    bool leaf = false;
    std::uint32_t vantage = 0;
    Dist mu{};
    std::int32_t inner = -1;
    std::int32_t outer = -1;
    std::uint32_t begin = 0;  // bucket range in order_ (leaves)
    std::uint32_t end = 0;
  };

  std::int32_t build(std::vector<std::uint32_t>& idx, std::mt19937_64& rng) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (idx.size() <= kLeafSize) {
      make_leaf(id, idx);
      return id;
    }
    std::swap(idx[std::uniform_int_distribution<std::size_t>(0, idx.size() - 1)(rng)], idx[0]);
    const std::uint32_t vantage = idx[0];
    std::vector<std::pair<Dist, std::uint32_t>> d;
    d.reserve(idx.size() - 1);
    for (std::size_t i = 1; i < idx.size(); ++i)
      d.emplace_back(metric_(entries_[vantage].item, entries_[idx[i]].item), idx[i]);
    std::sort(d.begin(), d.end());
    Dist mu = d[(d.size() - 1) / 2].first;
    // Ties go inside; if that empties the outer side, cut just below the
    // largest distance instead. All-equal distances make a leaf.
    if (!(d.back().first > mu)) {
      auto first_max = std::lower_bound(d.begin(), d.end(), d.back().first,
                                        [](const auto& e, const Dist& v) { return e.first < v; });
      if (first_max == d.begin()) {
        make_leaf(id, idx);
        return id;
      }
      mu = std::prev(first_max)->first;
    }
    std::vector<std::uint32_t> inner, outer;
    for (const auto& [dist, i] : d) (dist <= mu ? inner : outer).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    nodes_[static_cast<std::size_t>(id)].vantage = vantage;
    nodes_[static_cast<std::size_t>(id)].mu = mu;
    const auto in = build(inner, rng);
    const auto out = build(outer, rng);
    nodes_[static_cast<std::size_t>(id)].inner = in;
    nodes_[static_cast<std::size_t>(id)].outer = out;
    return id;
  }

  void make_leaf(std::int32_t id, const std::vector<std::uint32_t>& idx) {
    auto& n = nodes_[static_cast<std::size_t>(id)];
    n.leaf = true;
    n.begin = static_cast<std::uint32_t>(order_.size());
    order_.insert(order_.end(), idx.begin(), idx.end());
    n.end = static_cast<std::uint32_t>(order_.size());
  }

  template <class Offer, class Tau>
  void search(std::int32_t id, const Item& q, std::size_t& evals, Offer& offer, Tau& tau) const {
    if (id < 0) return;
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.leaf) {
      for (auto i = n.begin; i < n.end; ++i) {
        ++evals;
        offer(order_[i], metric_(q, entries_[order_[i]].item));
      }
      return;
    }
    ++evals;
    const Dist dq = metric_(q, entries_[n.vantage].item);
    offer(n.vantage, dq);
    // Inner entries lie within mu of the vantage, outer ones beyond it.
    auto visit_inner = [&] {
      auto t = tau();
      if (!t || !(dq - n.mu > *t)) search(n.inner, q, evals, offer, tau);
    };
    auto visit_outer = [&] {
      auto t = tau();
      if (!t || n.mu - dq < *t) search(n.outer, q, evals, offer, tau);
    };
    if (dq <= n.mu) {
      visit_inner();
      visit_outer();
    } else {
      visit_outer();
      visit_inner();
    }
  }

  bool verify(std::int32_t id) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.leaf) return true;
    bool ok = true;
    collect(n.inner, [&](std::uint32_t s) {
      ok = ok && metric_(entries_[n.vantage].item, entries_[s].item) <= n.mu;
    });
    collect(n.outer, [&](std::uint32_t s) {
      ok = ok && metric_(entries_[n.vantage].item, entries_[s].item) > n.mu;
    });
    return ok && verify(n.inner) && verify(n.outer);
  }

  template <class Fn>
  void collect(std::int32_t id, Fn&& fn) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.leaf) {
      for (auto i = n.begin; i < n.end; ++i) fn(order_[i]);
      return;
    }
    fn(n.vantage);
    collect(n.inner, fn);
    collect(n.outer, fn);
  }

  std::vector<Entry> entries_;
  Metric metric_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
  std::int32_t root_ = -1;
};

// NED over node signatures with a fixed weight scheme.
struct NedMetric {
  WeightScheme weights = WeightScheme::unit();

  Rational operator()(const NodeSignature& a, const NodeSignature& b) const {
    return signature_distance(a, b, weights);
  }
};

using NedIndex = VpTree<NodeSignature, NedMetric>;

// Index over every node of g keyed by its k-adjacent tree (directed graphs:
// the in/out tree pair with directed NED as the metric).
inline NedIndex build_index(const Graph& g, int k,
                            const WeightScheme& weights = WeightScheme::unit(),
                            std::uint64_t seed = 0) {
  if (g.empty()) throw DomainError("cannot index an empty graph");
  auto sigs = make_signatures(g, k);
  std::vector<NedIndex::Entry> entries;
  entries.reserve(sigs.size());
  for (std::size_t v = 0; v < sigs.size(); ++v)
    entries.push_back({static_cast<std::uint32_t>(v), std::move(sigs[v])});
  return NedIndex(std::move(entries), NedMetric{weights}, seed);
}

}  // namespace ned
