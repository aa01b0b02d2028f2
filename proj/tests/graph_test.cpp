#include <gtest/gtest.h>

#include <sstream>

#include "ned/graph.hpp"
#include "ned/random.hpp"

using namespace ned;

TEST(EdgeList, ParsesSnapStyleInput) {
  Graph g = parse_edge_list(
      "# Directed graph: example\n"
      "% konect header\n"
      "\n"
      "1\t2\n"
      "2 3\n"
      "  3 1  \n",
      false);
  EXPECT_FALSE(g.directed());
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(g.index_of("1"), g.index_of("3")));
  EXPECT_TRUE(g.has_edge(g.index_of("3"), g.index_of("1")));
}

TEST(EdgeList, DropsSelfLoopsAndDuplicates) {
  Graph g = parse_edge_list("a b\nb a\na b\nc c\n", false);
  EXPECT_EQ(g.size(), 3u);  // c is kept as an isolated node
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.adjacent(g.index_of("c")).empty());

  Graph d = parse_edge_list("a b\nb a\na b\n", true);
  EXPECT_EQ(d.edge_count(), 2u);
}

TEST(EdgeList, ReportsLineOfMalformedInput) {
  try {
    parse_edge_list("a b\n\nb c d\n", false);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), 3u);
  }
  EXPECT_THROW(parse_edge_list("lonely\n", false), ParseError);
}

TEST(EdgeList, WriteThenParsePreservesStructure) {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    for (bool directed : {false, true}) {
      Graph g = random_graph(30, 40, rng, directed);
      std::ostringstream os;
      write_edge_list(os, g);
      Graph h = parse_edge_list(os.str(), directed);
      ASSERT_EQ(h.size(), g.size());
      ASSERT_EQ(h.edge_count(), g.edge_count());
      for (auto [a, b] : g.edges())
        EXPECT_TRUE(h.has_edge(h.index_of(g.label(a)), h.index_of(g.label(b))));
    }
  }
}

TEST(Graph, NeighborsAreSortedAndModeChecked) {
  Graph d = parse_edge_list("x y\nz y\ny w\n", true);
  NodeIndex y = d.index_of("y");
  auto in = d.neighbors(y, Direction::in);
  auto out = d.neighbors(y, Direction::out);
  ASSERT_EQ(in.size(), 2u);
  EXPECT_LT(in[0], in[1]);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(d.label(out[0]), "w");
  EXPECT_THROW(d.neighbors(y, Direction::undirected), UsageError);

  Graph u = parse_edge_list("x y\n", false);
  EXPECT_THROW(u.neighbors(0, Direction::in), UsageError);
  EXPECT_THROW(u.neighbors(5, Direction::undirected), UsageError);
}

TEST(Graph, UnknownLabelIsAUsageError) {
  Graph g = parse_edge_list("a b\n", false);
  EXPECT_TRUE(g.contains("a"));
  EXPECT_FALSE(g.contains("q"));
  EXPECT_THROW(g.index_of("q"), UsageError);
}

TEST(Graph, BuilderKeepsFirstAppearanceOrder) {
  GraphBuilder b(false);
  b.add_node("solo");
  b.add_edge("p", "q");
  Graph g = std::move(b).build();
  EXPECT_EQ(g.index_of("solo"), 0u);
  EXPECT_EQ(g.index_of("p"), 1u);
  EXPECT_EQ(g.index_of("q"), 2u);
}

TEST(RandomGraph, HasRequestedEdgeCount) {
  Rng rng(3);
  Graph g = random_graph(50, 120, rng);
  EXPECT_EQ(g.size(), 50u);
  EXPECT_EQ(g.edge_count(), 120u);
}
