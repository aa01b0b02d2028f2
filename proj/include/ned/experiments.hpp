#pragma once

// Experiment harnesses: graph anonymization and NED-based
// de-anonymization, TED*/TED closeness, timing and parameter-k studies.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ned/error.hpp"
#include "ned/graph.hpp"
#include "ned/level_tree.hpp"
#include "ned/ned.hpp"
#include "ned/oracle.hpp"
#include "ned/parallel.hpp"
#include "ned/random.hpp"
#include "ned/ted_star.hpp"

namespace ned {

// ---------------------------------------------------------------------------
// Anonymization

enum class AnonymizationMethod { naive, sparsify, perturb };

struct AnonymizationSpec {
  AnonymizationMethod method = AnonymizationMethod::naive;
  double ratio = 0.0;  // fraction of edges removed (and, for perturb, added)
  std::uint64_t seed = 0;
};

struct AnonymizedGraph {
  Graph graph;
  std::vector<NodeIndex> truth;  // anonymized index -> original index
  std::size_t removed = 0;
  std::size_t added = 0;
  std::vector<std::string> warnings;
};

// Relabels nodes by a seeded random permutation, then removes ceil(p|E|)
// random edges (sparsify) and, for perturb, inserts as many random
// non-edges. For a fixed seed the removed and inserted sets grow with p, so
// a ratio sweep perturbs one graph progressively.
inline AnonymizedGraph anonymize(const Graph& g, const AnonymizationSpec& spec) {
  if (!(spec.ratio >= 0.0 && spec.ratio <= 1.0))
    throw UsageError("anonymization ratio must lie in [0, 1]");
  const std::size_t n = g.size();
  Rng rng(spec.seed);

  AnonymizedGraph out;
  std::vector<NodeIndex> perm(n);  // new index -> old index
  std::iota(perm.begin(), perm.end(), NodeIndex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<NodeIndex> inv(n);
  for (NodeIndex i = 0; i < n; ++i) inv[perm[i]] = i;
  out.truth = perm;

  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  std::size_t drop = 0;
  if (spec.method != AnonymizationMethod::naive)
    drop = static_cast<std::size_t>(std::ceil(spec.ratio * static_cast<double>(edges.size()) - 1e-9));
  if (drop > edges.size()) {
    out.warnings.push_back("edge removal clamped to " + std::to_string(edges.size()));
    drop = edges.size();
  }
  out.removed = drop;

  std::vector<std::pair<NodeIndex, NodeIndex>> kept(edges.begin() + static_cast<std::ptrdiff_t>(drop),
                                                    edges.end());
  if (spec.method == AnonymizationMethod::perturb) {
    const std::size_t max_edges = g.directed() ? n * (n - 1) : n * (n - 1) / 2;
    std::size_t want = drop;
    if (want > max_edges - g.edge_count()) {
      out.warnings.push_back("edge insertion clamped to the number of non-edges");
      want = max_edges - g.edge_count();
    }
    std::set<std::pair<NodeIndex, NodeIndex>> fresh;
    while (fresh.size() < want) {
      auto a = static_cast<NodeIndex>(uniform_index(rng, n));
      auto b = static_cast<NodeIndex>(uniform_index(rng, n));
      if (a == b) continue;
      if (!g.directed() && a > b) std::swap(a, b);
      if (g.has_edge(a, b)) continue;
      if (fresh.insert({a, b}).second) kept.emplace_back(a, b);
    }
    out.added = want;
  }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (NodeIndex i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (auto& [a, b] : kept) {
    a = inv[a];
    b = inv[b];
  }
  out.graph = Graph::from_edges(g.directed(), std::move(labels), std::move(kept));
  return out;
}

// ---------------------------------------------------------------------------
// De-anonymization

enum class TiePolicy { inclusive, exclusive };
enum class Similarity { ned, degree_histogram };

// Degree of the node followed by the sorted degrees of its neighbors. A
// simple structural baseline for comparison runs only; not a feature-based
// role-extraction method.
inline std::vector<std::size_t> degree_profile(const Graph& g, NodeIndex v) {
  auto nbrs = g.adjacent(v);
  std::vector<std::size_t> p{nbrs.size()};
  for (NodeIndex w : nbrs) p.push_back(g.adjacent(w).size());
  std::sort(p.begin() + 1, p.end());
  return p;
}

// |deg(u) - deg(v)| plus the L1 distance between the neighbor-degree
// histograms.
inline std::int64_t degree_profile_distance(const std::vector<std::size_t>& a,
                                            const std::vector<std::size_t>& b) {
  std::int64_t d = std::llabs(static_cast<long long>(a[0]) - static_cast<long long>(b[0]));
  std::size_t i = 1, j = 1;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      ++d;
      ++i;
    } else if (i == a.size() || b[j] < a[i]) {
      ++d;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return d;
}

struct DeanonOptions {
  int k = 3;
  std::size_t l = 5;
  std::size_t sample_size = 0;  // 0: every anonymized node
  std::uint64_t seed = 0;
  TiePolicy ties = TiePolicy::inclusive;
  Similarity similarity = Similarity::ned;
  WeightScheme weights = WeightScheme::unit();
};

struct DeanonRow {
  NodeIndex anon = 0;
  NodeIndex truth = 0;
  std::optional<std::size_t> rank;  // 1-based position of truth, if a hit
  std::vector<Rational> top;        // the l smallest distances
};

struct DeanonReport {
  std::vector<DeanonRow> rows;
  std::size_t hits = 0;
  double precision = 0.0;
  std::size_t sample_size = 0;
};

// For each sampled anonymized node, ranks the training nodes by distance
// (ties by index) and counts a hit when the true node is within the top l.
// Inclusive ties accept any node whose distance equals the l-th smallest.
inline DeanonReport deanonymize(const Graph& train, const Graph& anon,
                                const std::vector<NodeIndex>& truth, const DeanonOptions& opt) {
  if (opt.l < 1) throw UsageError("deanonymize: l must be >= 1");
  if (truth.size() != anon.size()) throw UsageError("deanonymize: truth size mismatch");
  if (train.empty()) throw DomainError("deanonymize: empty training graph");

  std::vector<NodeIndex> queries(anon.size());
  std::iota(queries.begin(), queries.end(), NodeIndex{0});
  if (opt.sample_size > 0 && opt.sample_size < queries.size()) {
    Rng rng(opt.seed);
    std::shuffle(queries.begin(), queries.end(), rng);
    queries.resize(opt.sample_size);
    std::sort(queries.begin(), queries.end());
  }

  std::vector<NodeSignature> train_sig, anon_sig;
  std::vector<std::vector<std::size_t>> train_deg, anon_deg;
  if (opt.similarity == Similarity::ned) {
    train_sig = make_signatures(train, opt.k);
    anon_sig.resize(queries.size());
    parallel_for(queries.size(),
                 [&](std::size_t i) { anon_sig[i] = make_signature(anon, queries[i], opt.k); });
  } else {
    for (NodeIndex v = 0; v < train.size(); ++v) train_deg.push_back(degree_profile(train, v));
    for (auto q : queries) anon_deg.push_back(degree_profile(anon, q));
  }

  DeanonReport rep;
  rep.sample_size = queries.size();
  rep.rows.resize(queries.size());
  parallel_for(queries.size(), [&](std::size_t qi) {
    std::vector<std::pair<Rational, NodeIndex>> ranked(train.size());
    for (NodeIndex t = 0; t < train.size(); ++t) {
      Rational d = opt.similarity == Similarity::ned
                       ? signature_distance(anon_sig[qi], train_sig[t], opt.weights)
                       : Rational(degree_profile_distance(anon_deg[qi], train_deg[t]));
      ranked[t] = {d, t};
    }
    std::sort(ranked.begin(), ranked.end());
    DeanonRow& row = rep.rows[qi];
    row.anon = queries[qi];
    row.truth = truth[queries[qi]];
    const std::size_t cut = std::min(opt.l, ranked.size());
    for (std::size_t i = 0; i < cut; ++i) row.top.push_back(ranked[i].first);
    const Rational threshold = ranked[cut - 1].first;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].second != row.truth) continue;
      bool hit = opt.ties == TiePolicy::inclusive ? ranked[i].first <= threshold : i < cut;
      if (hit) row.rank = i + 1;
      break;
    }
  });
  for (const auto& r : rep.rows) rep.hits += r.rank.has_value();
  rep.precision = rep.rows.empty() ? 0.0
                                   : static_cast<double>(rep.hits) / static_cast<double>(rep.rows.size());
  return rep;
}

// ---------------------------------------------------------------------------
// TED* vs exact unordered TED

struct ClosenessStats {
  std::size_t pairs = 0;        // pairs with TED > 0 (ratio denominator)
  std::size_t equal = 0;        // pairs with TED* == TED, over all pairs
  std::size_t total_pairs = 0;  // including TED == 0
  double mean_relative_error = 0.0;
  double stddev_relative_error = 0.0;
  double equality_ratio = 0.0;
};

struct ClosenessReport {
  ClosenessStats overall;
  std::map<int, ClosenessStats> by_levels;  // keyed by max level count of the pair
};

namespace detail {

struct RunningStats {
  ClosenessStats s;
  double sum = 0.0, sum_sq = 0.0;

  void add(int ted, std::int64_t ted_star_value) {
    ++s.total_pairs;
    if (ted == ted_star_value) ++s.equal;
    if (ted == 0) return;
    double r = std::abs(static_cast<double>(ted) - static_cast<double>(ted_star_value)) / ted;
    ++s.pairs;
    sum += r;
    sum_sq += r * r;
  }

  ClosenessStats finish() const {
    ClosenessStats out = s;
    if (s.pairs) {
      out.mean_relative_error = sum / static_cast<double>(s.pairs);
      double var = sum_sq / static_cast<double>(s.pairs) - out.mean_relative_error * out.mean_relative_error;
      out.stddev_relative_error = std::sqrt(std::max(0.0, var));
    }
    if (s.total_pairs)
      out.equality_ratio = static_cast<double>(s.equal) / static_cast<double>(s.total_pairs);
    return out;
  }
};

}  // namespace detail

// |TED - TED*| / TED over pairs with TED > 0; the equality ratio counts
// every pair.
inline ClosenessReport ted_closeness_study(
    const std::vector<std::pair<LevelTree, LevelTree>>& corpus) {
  std::vector<std::pair<int, std::int64_t>> values(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& [a, b] = corpus[i];
    values[i] = {exact_unordered_ted(a, b),
                 ted_star(a, b).distance.numerator()};
  });
  detail::RunningStats all;
  std::map<int, detail::RunningStats> slices;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    all.add(values[i].first, values[i].second);
    int levels = std::max(corpus[i].first.depth_levels(), corpus[i].second.depth_levels());
    slices[levels].add(values[i].first, values[i].second);
  }
  ClosenessReport rep;
  rep.overall = all.finish();
  for (auto& [k, s] : slices) rep.by_levels[k] = s.finish();
  return rep;
}

// All unordered pairs (including self-pairs) of enumerated trees.
inline std::vector<std::pair<LevelTree, LevelTree>> exhaustive_pairs(int n_max, int depth_max) {
  auto trees = enumerate_trees(n_max, depth_max);
  std::vector<std::pair<LevelTree, LevelTree>> out;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = i; j < trees.size(); ++j) out.emplace_back(trees[i], trees[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Timing

struct ScalingRow {
  std::size_t nodes = 0;
  int k = 0;
  std::size_t samples = 0;
  double p50_us = 0, p90_us = 0, max_us = 0;
};

// Median/p90/max wall time of ted_star on seeded random tree pairs with the
// given node count and k levels (depth k - 1).
inline std::vector<ScalingRow> scaling_study(const std::vector<std::size_t>& sizes,
                                             const std::vector<int>& ks, std::size_t reps,
                                             std::uint64_t seed) {
  std::vector<ScalingRow> rows;
  Rng rng(seed);
  for (int k : ks) {
    for (std::size_t n : sizes) {
      std::vector<double> t;
      for (std::size_t r = 0; r < reps; ++r) {
        auto a = random_tree(n, k - 1, rng);
        auto b = random_tree(n, k - 1, rng);
        auto start = std::chrono::steady_clock::now();
        auto d = ted_star_distance_only(a, b);
        auto stop = std::chrono::steady_clock::now();
        (void)d;
        t.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
      }
      std::sort(t.begin(), t.end());
      ScalingRow row{n, k, t.size(), 0, 0, 0};
      if (!t.empty()) {
        row.p50_us = t[t.size() / 2];
        row.p90_us = t[std::min(t.size() - 1, t.size() * 9 / 10)];
        row.max_us = t.back();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Effect of k on nearest-neighbor sets and top-l ties

struct KEffectRow {
  int k = 0;
  std::size_t queries = 0;
  std::size_t zero_matches = 0;  // sum over queries of nodes at distance 0
  std::size_t nn_set = 0;        // sum over queries of nodes at the minimum distance
  std::size_t top_ties = 0;      // sum over queries of l - distinct distances in top l
};

struct KEffectQuery {
  NodeIndex query = 0;
  std::vector<std::size_t> zero_matches;  // per k in the studied range
};

struct KEffectReport {
  std::vector<KEffectRow> rows;
  std::vector<KEffectQuery> per_query;
};

// Seeded query nodes from g1 against every node of g2, for k in
// [k_min, k_max].
inline KEffectReport k_effect_study(const Graph& g1, const Graph& g2, std::size_t queries,
                                    int k_min, int k_max, std::size_t l, std::uint64_t seed) {
  if (k_min < 1 || k_max < k_min || k_max > 8) throw UsageError("k range must lie in [1, 8]");
  if (g1.empty() || g2.empty()) throw DomainError("k_effect_study: empty graph");
  std::vector<NodeIndex> q(g1.size());
  std::iota(q.begin(), q.end(), NodeIndex{0});
  Rng rng(seed);
  std::shuffle(q.begin(), q.end(), rng);
  q.resize(std::min(queries, q.size()));
  std::sort(q.begin(), q.end());

  KEffectReport rep;
  rep.per_query.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) rep.per_query[i].query = q[i];
  for (int k = k_min; k <= k_max; ++k) {
    auto sig2 = make_signatures(g2, k);
    KEffectRow row;
    row.k = k;
    row.queries = q.size();
    std::vector<KEffectRow> partial(q.size());
    parallel_for(q.size(), [&](std::size_t i) {
      auto sq = make_signature(g1, q[i], k);
      std::vector<Rational> d(sig2.size());
      for (std::size_t t = 0; t < sig2.size(); ++t) d[t] = signature_distance(sq, sig2[t]);
      std::sort(d.begin(), d.end());
      auto& p = partial[i];
      p.zero_matches = static_cast<std::size_t>(std::count(d.begin(), d.end(), Rational(0)));
      p.nn_set = static_cast<std::size_t>(std::count(d.begin(), d.end(), d.front()));
      const std::size_t cut = std::min(l, d.size());
      std::size_t distinct = cut ? 1 : 0;
      for (std::size_t j = 1; j < cut; ++j) distinct += d[j] != d[j - 1];
      p.top_ties = cut - distinct;
    });
    for (std::size_t i = 0; i < q.size(); ++i) {
      row.zero_matches += partial[i].zero_matches;
      row.nn_set += partial[i].nn_set;
      row.top_ties += partial[i].top_ties;
      rep.per_query[i].zero_matches.push_back(partial[i].zero_matches);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ned
