// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.

#include "balansol/graph.hpp"

#include <gtest/gtest.h>

#include <string>

namespace balansol {
namespace {

const char* kMixedInstance =
    "# demo instance\n"
    "vertices 3\n"
    "edge 0 1 1/2\n"
    "edge 1 2 0.85   # decimal weight\n"
    "edge 2 2 1\n"
    "\n"
    "edge 0 2 2/3\n";

TEST(GraphParse, ReadsDirectivesCommentsAndWeights) {
  Graph g = parse_instance_text(kMixedInstance);
  EXPECT_EQ(g.vertex_count(), 3);
  ASSERT_EQ(g.edge_count(), 4);
  EXPECT_EQ(g.edge(0).w, Rat(1, 2));
  EXPECT_EQ(g.edge(1).w, Rat(17, 20));
  EXPECT_TRUE(g.edge(2).is_loop());
  EXPECT_EQ(g.edge(3).w, Rat(2, 3));
  // Ids follow file order.
  for (int i = 0; i < 4; ++i) EXPECT_EQ(g.edge(i).id, i);
  // Incident lists: loop appears once.
  EXPECT_EQ(g.incident(2), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(g.incident(0), (std::vector<int>{0, 3}));
}

TEST(GraphParse, RejectsMalformedInput) {
  auto expect_parse_error = [](const std::string& text,
                               const std::string& fragment) {
    try {
      parse_instance_text(text);
      FAIL() << "expected ParseError for: " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
          << "message was: " << e.what();
    }
  };
  expect_parse_error("vertices 2\nfoo 1 2 3\n", "unknown directive");
  expect_parse_error("vertices 2\nedge 0 5 1\n", "out of range");
  expect_parse_error("vertices 2\nedge 0 1 -1/2\n", "positive");
  expect_parse_error("vertices 2\nedge 0 1 0\n", "positive");
  expect_parse_error("edge 0 1 1\n", "before vertices");
  expect_parse_error("vertices 2\nedge 0 1 banana\n", "bad edge weight");
  expect_parse_error("vertices 2\nvertices 2\n", "duplicate");
  expect_parse_error("vertices 0\n", "positive count");
  expect_parse_error("", "missing vertices");
  expect_parse_error("vertices 2\nedge 0 1\n", "needs two endpoints");
  expect_parse_error("vertices 2\nedge 0 1 1/2 9\n", "trailing text");
  expect_parse_error("vertices 2 3\n", "trailing text");
}

TEST(GraphParse, ReportsLineNumbers) {
  try {
    parse_instance_text("vertices 2\n# fine\nedge 0 9 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(GraphParse, FormatRoundTrips) {
  Graph g = parse_instance_text(kMixedInstance);
  Graph again = parse_instance_text(format_instance(g));
  EXPECT_EQ(g, again);
}

TEST(Orientation, WeightedInDegreeCountsLoopOnce) {
  Graph g = parse_instance_text(kMixedInstance);
  // e0 -> 1, e1 -> 2, loop e2 -> 2, e3 -> 0
  Orientation orient{1, 2, 2, 0};
  check_orientation(g, orient);
  EXPECT_EQ(weighted_in_degree(g, orient, 0), Rat(2, 3));
  EXPECT_EQ(weighted_in_degree(g, orient, 1), Rat(1, 2));
  EXPECT_EQ(weighted_in_degree(g, orient, 2), Rat(17, 20) + Rat(1));
  EXPECT_EQ(makespan(g, orient), Rat(37, 20));
  // In-degrees sum to the total weight under any orientation.
  Rat sum;
  for (int v = 0; v < g.vertex_count(); ++v) {
    sum += weighted_in_degree(g, orient, v);
  }
  EXPECT_EQ(sum, g.total_weight());
}

TEST(Orientation, CheckRejectsNonEndpointAndBadSize) {
  Graph g = parse_instance_text("vertices 3\nedge 0 1 1\n");
  EXPECT_THROW(check_orientation(g, Orientation{2}), Error);
  EXPECT_THROW(check_orientation(g, Orientation{0, 1}), Error);
  check_orientation(g, Orientation{1});
}

TEST(Orientation, GreedyPlacesHeavyFirstTowardLightSide) {
  // Three parallel unit edges: first to vertex 0, second to 1, third ties
  // back to 0, giving loads (2, 1).
  Graph g = parse_instance_text(
      "vertices 2\nedge 0 1 1\nedge 0 1 1\nedge 0 1 1\n");
  Orientation orient = greedy_orientation(g);
  EXPECT_EQ(orient, (Orientation{0, 1, 0}));
  EXPECT_EQ(makespan(g, orient), Rat(2));
  // Loops are forced regardless of load.
  Graph h = parse_instance_text("vertices 2\nedge 1 1 1\nedge 0 1 1/2\n");
  Orientation oh = greedy_orientation(h);
  EXPECT_EQ(oh[0], 1);
  EXPECT_EQ(makespan(h, oh), Rat(1));
}

TEST(GraphScale, RoundTripIdentity) {
  Graph g = parse_instance_text(kMixedInstance);
  Graph scaled = scale_weights(g, Rat(2, 3));
  EXPECT_EQ(scaled.edge(0).w, Rat(1, 3));
  Graph back = scale_weights(scaled, Rat(3, 2));
  EXPECT_EQ(g, back);
  EXPECT_THROW(scale_weights(g, Rat(0)), Error);
}

TEST(GraphModel, MaxAndTotalWeight) {
  Graph g = parse_instance_text(kMixedInstance);
  EXPECT_EQ(g.max_weight(), Rat(1));
  EXPECT_EQ(g.total_weight(), Rat(1, 2) + Rat(17, 20) + Rat(1) + Rat(2, 3));
}

}  // namespace
}  // namespace balansol
