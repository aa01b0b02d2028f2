#include <gtest/gtest.h>

#include <set>

#include "ned/experiments.hpp"

using namespace ned;

namespace {

std::set<std::pair<NodeIndex, NodeIndex>> edge_set(const Graph& g) {
  auto e = g.edges();
  return {e.begin(), e.end()};
}

// Edges of the anonymized graph expressed in original indices.
std::set<std::pair<NodeIndex, NodeIndex>> original_edges(const AnonymizedGraph& a) {
  std::set<std::pair<NodeIndex, NodeIndex>> out;
  for (auto [x, y] : a.graph.edges()) {
    NodeIndex p = a.truth[x], q = a.truth[y];
    out.insert({std::min(p, q), std::max(p, q)});
  }
  return out;
}

}  // namespace

TEST(Anonymize, NaiveIsARelabeling) {
  Rng rng(1);
  Graph g = random_graph(120, 250, rng);
  auto a = anonymize(g, {AnonymizationMethod::naive, 0.0, 5});
  EXPECT_EQ(original_edges(a), edge_set(g));
  std::vector<NodeIndex> sorted = a.truth;
  std::sort(sorted.begin(), sorted.end());
  for (NodeIndex i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
  for (NodeIndex v = 0; v < g.size(); ++v) {
    auto ta = extract_k_adjacent_tree(a.graph, v, 3, Direction::undirected);
    auto tg = extract_k_adjacent_tree(g, a.truth[v], 3, Direction::undirected);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(ta.level_size(i), tg.level_size(i));
  }
}

TEST(Anonymize, SparsifyAtZeroIsNaive) {
  Rng rng(2);
  Graph g = random_graph(60, 100, rng);
  auto naive = anonymize(g, {AnonymizationMethod::naive, 0.0, 8});
  auto sparse = anonymize(g, {AnonymizationMethod::sparsify, 0.0, 8});
  EXPECT_EQ(naive.truth, sparse.truth);
  EXPECT_EQ(edge_set(naive.graph), edge_set(sparse.graph));
}

TEST(Anonymize, SparsifyRemovesCeilingOfRatio) {
  Rng rng(3);
  Graph g = random_graph(60, 101, rng);
  auto a = anonymize(g, {AnonymizationMethod::sparsify, 0.1, 4});
  EXPECT_EQ(a.removed, 11u);
  EXPECT_EQ(a.graph.edge_count(), 90u);
  auto kept = original_edges(a);
  auto all = edge_set(g);
  EXPECT_TRUE(std::includes(all.begin(), all.end(), kept.begin(), kept.end()));
}

// The 4-node path has exactly three non-edges, so removing every edge and
// inserting three non-edges must produce its complement.
TEST(Anonymize, PerturbAllOfAPathGivesItsComplement) {
  Graph path = parse_edge_list("0 1\n1 2\n2 3\n", false);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto a = anonymize(path, {AnonymizationMethod::perturb, 1.0, seed});
    EXPECT_EQ(a.graph.edge_count(), 3u);
    EXPECT_EQ(a.removed, 3u);
    EXPECT_EQ(a.added, 3u);
    auto expected = std::set<std::pair<NodeIndex, NodeIndex>>{{0, 2}, {0, 3}, {1, 3}};
    EXPECT_EQ(original_edges(a), expected);
  }
}

TEST(Anonymize, InsertionClampsOnDenseGraphs) {
  Graph k4 = parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", false);
  auto a = anonymize(k4, {AnonymizationMethod::perturb, 0.5, 1});
  EXPECT_EQ(a.added, 0u);
  EXPECT_FALSE(a.warnings.empty());
  EXPECT_THROW(anonymize(k4, {AnonymizationMethod::sparsify, 1.5, 1}), UsageError);
}

TEST(Anonymize, LargerRatiosExtendSmallerOnes) {
  Rng rng(4);
  Graph g = random_graph(100, 300, rng);
  auto a = anonymize(g, {AnonymizationMethod::sparsify, 0.05, 6});
  auto b = anonymize(g, {AnonymizationMethod::sparsify, 0.10, 6});
  auto ea = original_edges(a), eb = original_edges(b);
  EXPECT_TRUE(std::includes(ea.begin(), ea.end(), eb.begin(), eb.end()));
}

// On a forest every node's tree survives relabeling, so naive
// anonymization is undone exactly.
TEST(Deanonymize, NaiveAnonymizationOfAForestIsFullyRecovered) {
  Rng rng(5);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex v = 1; v < 150; ++v) edges.emplace_back(static_cast<NodeIndex>(uniform_index(rng, v)), v);
  std::vector<std::string> labels;
  for (NodeIndex v = 0; v < 150; ++v) labels.push_back(std::to_string(v));
  Graph g = Graph::from_edges(false, labels, edges);
  auto a = anonymize(g, {AnonymizationMethod::naive, 0.0, 3});
  for (std::size_t l : {1u, 5u}) {
    DeanonOptions opt;
    opt.l = l;
    auto rep = deanonymize(g, a.graph, a.truth, opt);
    EXPECT_DOUBLE_EQ(rep.precision, 1.0);
    for (const auto& row : rep.rows) EXPECT_EQ(row.top.front(), 0);
  }
}

TEST(Deanonymize, PrecisionGrowsWithL) {
  Rng rng(6);
  Graph g = random_graph(150, 300, rng);
  auto a = anonymize(g, {AnonymizationMethod::perturb, 0.1, 3});
  double prev = 0;
  for (std::size_t l : {1u, 2u, 5u, 10u, 20u}) {
    DeanonOptions opt;
    opt.l = l;
    opt.ties = TiePolicy::exclusive;
    auto rep = deanonymize(g, a.graph, a.truth, opt);
    EXPECT_GE(rep.precision, prev);
    EXPECT_EQ(rep.hits, static_cast<std::size_t>(std::count_if(
                            rep.rows.begin(), rep.rows.end(),
                            [](const DeanonRow& r) { return r.rank.has_value(); })));
    prev = rep.precision;
  }
}

TEST(Deanonymize, InclusiveTiesNeverLoseHits) {
  Rng rng(7);
  Graph g = random_graph(120, 200, rng);
  auto a = anonymize(g, {AnonymizationMethod::sparsify, 0.05, 9});
  DeanonOptions inc, exc;
  inc.l = exc.l = 3;
  exc.ties = TiePolicy::exclusive;
  EXPECT_GE(deanonymize(g, a.graph, a.truth, inc).hits, deanonymize(g, a.graph, a.truth, exc).hits);
}

TEST(Deanonymize, SamplingAndBaseline) {
  Rng rng(8);
  Graph g = random_graph(200, 400, rng);
  auto a = anonymize(g, {AnonymizationMethod::naive, 0.0, 1});
  DeanonOptions opt;
  opt.sample_size = 30;
  opt.seed = 12;
  opt.similarity = Similarity::degree_histogram;
  auto r1 = deanonymize(g, a.graph, a.truth, opt);
  auto r2 = deanonymize(g, a.graph, a.truth, opt);
  EXPECT_EQ(r1.sample_size, 30u);
  EXPECT_DOUBLE_EQ(r1.precision, 1.0);
  ASSERT_EQ(r1.rows.size(), r2.rows.size());
  for (std::size_t i = 0; i < r1.rows.size(); ++i) EXPECT_EQ(r1.rows[i].anon, r2.rows[i].anon);
  DeanonOptions bad;
  bad.l = 0;
  EXPECT_THROW(deanonymize(g, a.graph, a.truth, bad), UsageError);
}

TEST(DegreeProfile, Distance) {
  Graph g = parse_edge_list("a b\na c\nb c\nc d\n", false);
  auto pa = degree_profile(g, g.index_of("a"));
  auto pc = degree_profile(g, g.index_of("c"));
  EXPECT_EQ(pa, (std::vector<std::size_t>{2, 2, 3}));
  EXPECT_EQ(pc, (std::vector<std::size_t>{3, 1, 2, 2}));
  // |2 - 3| + {2,3} vs {1,2,2}: 3 and 1 unmatched, one 2 unmatched.
  EXPECT_EQ(degree_profile_distance(pa, pc), 4);
}

TEST(Closeness, IdenticalPairs) {
  std::vector<std::pair<LevelTree, LevelTree>> corpus;
  for (const auto& t : enumerate_trees(5, 4)) corpus.emplace_back(t, t);
  auto rep = ted_closeness_study(corpus);
  EXPECT_EQ(rep.overall.mean_relative_error, 0.0);
  EXPECT_EQ(rep.overall.equality_ratio, 1.0);
  EXPECT_EQ(rep.overall.pairs, 0u);
}

TEST(Closeness, SlicesPartitionTheCorpus) {
  auto rep = ted_closeness_study(exhaustive_pairs(5, 4));
  std::size_t total = 0, equal = 0;
  for (const auto& [levels, s] : rep.by_levels) {
    total += s.total_pairs;
    equal += s.equal;
  }
  EXPECT_EQ(total, rep.overall.total_pairs);
  EXPECT_EQ(equal, rep.overall.equal);
  EXPECT_EQ(rep.overall.total_pairs, 17u * 18u / 2u);
}

TEST(Scaling, HasARowPerBucket) {
  auto rows = scaling_study({1, 20}, {2, 3}, 3, 1);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].nodes, 1u);
  EXPECT_EQ(rows[0].samples, 3u);
  for (const auto& r : rows) EXPECT_LE(r.p50_us, r.max_us);
}

TEST(KEffect, SingleLevelTiesEverything) {
  Rng rng(9);
  Graph a = random_graph(80, 150, rng);
  Graph b = random_graph(70, 140, rng);
  auto rep = k_effect_study(a, b, 20, 1, 5, 5, 3);
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_EQ(rep.rows[0].zero_matches, 20u * 70u);
  EXPECT_EQ(rep.rows[0].top_ties, 20u * 4u);
  for (const auto& q : rep.per_query)
    for (std::size_t i = 1; i < q.zero_matches.size(); ++i)
      EXPECT_LE(q.zero_matches[i], q.zero_matches[i - 1]);
  EXPECT_THROW(k_effect_study(a, b, 5, 0, 3, 5, 1), UsageError);
  EXPECT_THROW(k_effect_study(a, b, 5, 1, 9, 5, 1), UsageError);
}
