#include <gtest/gtest.h>

#include <random>

#include "quilts/graph.hpp"
#include "support/oracles.hpp"

using namespace quilts;

namespace {

// Layers: n0,n1 -> 1; n2,n3 -> 2; n4,n5 -> 3.
LayeredGraph three_layers(std::vector<Link> links) { return LayeredGraph::checked(3, {1, 1, 2, 2, 3, 3}, std::move(links)); }

}  // namespace

TEST(ClassifyLink, ProperBetweenSucceedingLayers) {
  const auto g = three_layers({{2, 4}});
  const auto c = classify_link(g, {2, 4});
  EXPECT_EQ(c.kind, LinkKind::Proper);
  EXPECT_TRUE(c.proper());
  EXPECT_EQ(to_string(c), "Proper");
}

TEST(ClassifyLink, ForwardSkip) {
  const auto g = three_layers({{0, 4}});
  const auto c = classify_link(g, {0, 4});
  EXPECT_TRUE(c.skip());
  EXPECT_EQ(c.direction, SkipDirection::Forward);
  EXPECT_EQ(to_string(c), "Skip/Forward");
}

TEST(ClassifyLink, SameLayerAndBackward) {
  const auto g = three_layers({{4, 5}, {5, 0}});
  EXPECT_EQ(classify_link(g, {4, 5}).direction, SkipDirection::SameLayer);
  EXPECT_EQ(classify_link(g, {5, 0}).direction, SkipDirection::Backward);
}

TEST(ClassifyLink, UnknownNodeThrows) {
  const auto g = three_layers({});
  try {
    classify_link(g, {0, 9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidLink);
  }
}

TEST(PossibleProperLinks, Examples) {
  const std::vector<std::size_t> a{20, 20}, b{2, 3, 4}, c{5};
  EXPECT_EQ(possible_proper_links(a), 400u);
  EXPECT_EQ(possible_proper_links(b), 18u);
  EXPECT_EQ(possible_proper_links(c), 0u);
}

TEST(PossibleProperLinks, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto g = oracle::random_graph(rng, 200, 15, 0.0);
    EXPECT_EQ(possible_proper_links(g), oracle::possible_proper(g));
  }
}

TEST(ClassifyLink, PartitionsLinks) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto g = oracle::random_graph(rng, 30, 6, 0.2);
    const auto c = count_links(g);
    const auto o = oracle::count(g);
    EXPECT_EQ(c.proper, o.proper);
    EXPECT_EQ(c.skip, o.skip);
    EXPECT_EQ(c.proper + c.skip, g.link_count());
  }
}

TEST(Validate, WellFormedGraphIsOk) {
  const auto g = three_layers({{0, 2}, {2, 4}, {1, 5}});
  EXPECT_TRUE(validate(g).empty());
  EXPECT_TRUE(well_formed(g));
}

TEST(Validate, DuplicateLink) {
  const LayeredGraph g(3, {1, 1, 2, 2, 3, 3}, {{0, 2}, {0, 2}});
  const auto v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::DuplicateLink);
}

TEST(Validate, EmptyLayer) {
  const LayeredGraph g(3, {1, 1, 3}, {});
  const auto v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::EmptyLayer);
  EXPECT_EQ(to_string(v[0]), "EmptyLayer(2)");
}

TEST(Validate, SelfLoopAndOutOfRange) {
  const LayeredGraph g(2, {1, 2, 7}, {{1, 1}, {0, 5}});
  std::set<ViolationKind> kinds;
  for (const auto& v : validate(g)) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.contains(ViolationKind::SelfLoop));
  EXPECT_TRUE(kinds.contains(ViolationKind::LayerOutOfRange));
  EXPECT_TRUE(kinds.contains(ViolationKind::UnknownNode));
}

TEST(LayeredGraph, CheckedThrowsOnViolation) {
  try {
    LayeredGraph::checked(2, {1, 2}, {{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidGraph);
  }
}

TEST(LayeredGraph, NeighborsAndLayers) {
  const auto g = three_layers({{2, 4}, {0, 2}, {0, 3}});
  EXPECT_EQ(g.links().front(), (Link{0, 2}));  // checked() sorts
  EXPECT_EQ(std::vector<NodeId>(g.out_neighbors(0).begin(), g.out_neighbors(0).end()), (std::vector<NodeId>{2, 3}));
  EXPECT_EQ(g.nodes_in_layer(2), (std::vector<NodeId>{2, 3}));
  EXPECT_EQ(g.index_in_layer(3), 1u);
  EXPECT_TRUE(g.has_link({2, 4}));
  EXPECT_FALSE(g.has_link({4, 2}));
}
