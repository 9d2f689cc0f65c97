#include <gtest/gtest.h>

#include <sstream>

#include "chordsum/graph.hpp"
#include "chordsum/io.hpp"
#include "support/graphs.hpp"

using namespace chordsum;
namespace ts = testing_support;

TEST(WeightedGraph, RejectsMalformedInput) {
  std::vector<Edge> loop{{0, 0}};
  EXPECT_THROW(WeightedGraph(2, loop), std::invalid_argument);
  std::vector<Edge> twice{{0, 1}, {1, 0}};
  EXPECT_THROW(WeightedGraph(2, twice), std::invalid_argument);
  std::vector<Edge> out_of_range{{0, 2}};
  EXPECT_THROW(WeightedGraph(2, out_of_range), std::invalid_argument);
  std::vector<Edge> none;
  std::vector<double> negative{1.0, -1.0};
  EXPECT_THROW(WeightedGraph(2, none, negative), std::invalid_argument);
}

TEST(WeightedGraph, AdjacencyIsSymmetricAndSorted) {
  auto g = ts::make(4, {{2, 0}, {0, 1}, {3, 0}});
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
  auto nb = g.neighbors(0);
  EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(Coloring, ObjectiveIsRecomputedAndImproperRejected) {
  auto g = ts::make(3, {{0, 1}, {1, 2}}, {2.0, 3.0, 5.0});
  auto c = Coloring::of(g, {1, 2, 1});
  EXPECT_DOUBLE_EQ(c.objective(), 2 + 6 + 5);
  EXPECT_EQ(c.max_color(), 2);
  EXPECT_THROW(Coloring::of(g, {1, 1, 2}), InvariantViolation);
  EXPECT_THROW(Coloring::of(g, {0, 1, 2}), InvariantViolation);
}

TEST(Coloring, CompactionKeepsOrderAndNeverIncreasesSum) {
  EXPECT_EQ(compact_colors({5, 2, 9, 2}), (std::vector<int>{2, 1, 3, 1}));
}

TEST(InducedSubgraph, RenumbersKeptVertices) {
  auto g = ts::make(4, {{0, 1}, {1, 2}, {2, 3}}, {1, 2, 3, 4});
  std::vector<Vertex> keep{1, 2, 3};
  auto h = induced_subgraph(g, keep);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(h.weight(0), 2.0);
}

TEST(GraphFormat, ParsesWeightsEdgesAndComments) {
  auto g = io::parse_graph("c triangle\np 3 3\nw 2 4.5\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.weight(1), 4.5);
  EXPECT_DOUBLE_EQ(g.weight(0), 1.0);
}

TEST(GraphFormat, RoundTripsThroughWriter) {
  auto g = ts::make(4, {{0, 1}, {2, 3}}, {1.0, 0.1, 7.0, 0.0});
  std::ostringstream out;
  io::write_graph(out, g);
  auto h = io::parse_graph(out.str());
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_EQ(h.weights(), g.weights());
}

TEST(GraphFormat, ReportsLineNumbers) {
  try {
    io::parse_graph("p 2 1\ne 1 3\n");
    FAIL() << "expected a parse error";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(io::parse_graph("e 1 2\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("p 2 2\ne 1 2\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("p 2 1\ne 1 2\ne 2 1\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("p 2 0\nw 1 -3\n"), io::ParseError);
  EXPECT_THROW(io::parse_graph("p 2 0\nx\n"), io::ParseError);
}
