#include <gtest/gtest.h>

#include <random>

#include "quilts/generator.hpp"
#include "support/oracles.hpp"

using namespace quilts;

namespace {

// Five layers, two nodes each: layer k holds nodes 2(k-1) and 2(k-1)+1.
std::vector<int> pairs_of_five() { return {1, 1, 2, 2, 3, 3, 4, 4, 5, 5}; }

std::vector<std::vector<NodeId>> as_nodes(const std::vector<Path>& paths) {
  std::vector<std::vector<NodeId>> out;
  for (const auto& p : paths) out.push_back(p.nodes);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(RequiredLinkCounts, Examples) {
  TreatmentSpec s{50, 5, 0.25, 0.0, Experiment::Exp2};
  EXPECT_EQ(required_link_counts(s, 400).proper, 100u);
  s.linkDensity = 0.5;
  EXPECT_EQ(required_link_counts(s, 400).proper, 200u);
  s.linkDensity = 0.25;
  EXPECT_EQ(required_link_counts(s, 400).skip, 0u);
}

TEST(RequiredLinkCounts, RoundsHalfAwayFromZero) {
  TreatmentSpec s{50, 5, 0.25, 0.5, Experiment::Exp1};
  // 0.25 * 18 = 4.5 -> 5 proper; 0.5 * 5 = 2.5 -> 3 skips.
  EXPECT_EQ(required_link_counts(s, 18), (RequiredCounts{5, 3}));
}

TEST(Generate, ExactCountsAgainstCountingOracle) {
  const TreatmentSpec s{50, 5, 0.25, 0.25, Experiment::Exp1};
  const auto g = generate(s, 7);
  const auto possible = oracle::possible_proper(g);
  const auto wantProper = oracle::round_half_up(0.25 * static_cast<double>(possible));
  const auto wantSkip = oracle::round_half_up(0.25 * static_cast<double>(wantProper));
  const auto got = oracle::count(g);
  EXPECT_EQ(got.proper, wantProper);
  EXPECT_EQ(got.skip, wantSkip);
  EXPECT_EQ(g.node_count(), 50u);
  for (auto sz : g.layer_sizes()) EXPECT_GT(sz, 0u);
}

TEST(Generate, Deterministic) {
  const TreatmentSpec s{100, 10, 0.5, 0.5, Experiment::Exp1};
  EXPECT_EQ(generate(s, 42), generate(s, 42));
  EXPECT_NE(generate(s, 42), generate(s, 43));
}

TEST(Generate, SingleLayerRejected) {
  try {
    generate({10, 1, 0.25, 0.25, Experiment::Exp1}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoProperLinksPossible);
  }
}

TEST(Generate, InfeasibleSkipCount) {
  try {
    generate({3, 2, 1.0, 100.0, Experiment::Exp1}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InfeasibleCounts);
  }
}

TEST(Generate, InvalidSpec) {
  EXPECT_THROW(generate({3, 5, 0.25, 0.25, Experiment::Exp1}, 0), Error);
  EXPECT_THROW(generate({30, 5, 1.5, 0.25, Experiment::Exp1}, 0), Error);
}

TEST(GoodPaths, FiveLayerExp1PathsHaveThreeLinks) {
  const TreatmentSpec s{50, 5, 0.5, 0.5, Experiment::Exp1};
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto gg = generate_until_valid(s, seed);
    const auto c = regime_constraints(Experiment::Exp1, 5, gg.source, gg.destination);
    for (const auto& p : good_paths(gg.graph, c, 500)) {
      EXPECT_EQ(p.link_count(), 3u);
      ++seen;
    }
  }
  EXPECT_GT(seen, 0u);
}

TEST(GoodPaths, NoConnectivityGivesEmptyList) {
  const auto g = LayeredGraph::checked(5, pairs_of_five(), {{0, 2}, {2, 4}, {5, 7}, {7, 9}});
  EXPECT_TRUE(good_paths(g, regime_constraints(Experiment::Exp1, 5, 0, 8)).empty());
  EXPECT_TRUE(good_paths(g, regime_constraints(Experiment::Exp2, 5, 0, 8)).empty());
}

TEST(GoodPaths, TenNodeFixtureHasExactlyOnePath) {
  // 0->2->6->8 (2->6 skips layer 3) is the only 3-link path with a skip;
  // 0->3->5->7->8 is all proper and too long.
  const auto g = LayeredGraph::checked(
      5, pairs_of_five(), {{0, 2}, {2, 6}, {6, 8}, {0, 3}, {3, 5}, {5, 7}, {7, 8}, {1, 2}, {4, 9}});
  const auto c = regime_constraints(Experiment::Exp1, 5, 0, 8);
  const auto paths = as_nodes(good_paths(g, c));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], (std::vector<NodeId>{0, 2, 6, 8}));
  EXPECT_EQ(paths, oracle::good_paths(g, c));
}

TEST(GoodPaths, AgreesWithBruteForceOnRandomSmallGraphs) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto g = oracle::random_graph(rng, 12, 5, 0.3);
    const auto first = g.nodes_in_layer(1);
    const auto last = g.nodes_in_layer(g.layer_count());
    const NodeId s = first[rng() % first.size()];
    const NodeId d = last[rng() % last.size()];
    for (auto e : {Experiment::Exp1, Experiment::Exp2}) {
      auto c = regime_constraints(e, g.layer_count(), s, d);
      if (c.maxLinks < c.minLinks) c.maxLinks = c.minLinks + 2;  // exercise the search anyway
      EXPECT_EQ(as_nodes(good_paths(g, c)), oracle::good_paths(g, c)) << "graph " << i;
      EXPECT_EQ(has_good_path(g, c), !oracle::good_paths(g, c).empty());
    }
  }
}

TEST(TestConstraints, OnlyFourLinkPathIsTooLong) {
  // 0->2->3->5->8: 2->3 is same-layer, 5->8 skips layer 4.
  const auto g = LayeredGraph::checked(5, pairs_of_five(), {{0, 2}, {2, 3}, {3, 5}, {5, 8}});
  const auto c = regime_constraints(Experiment::Exp1, 5, 0, 8);
  EXPECT_FALSE(has_good_path(g, c));
  EXPECT_EQ(explain_rejection(g, c), RejectReason::PathTooLong);
}

TEST(TestConstraints, AllProperPathHasNoSkip) {
  const auto g = LayeredGraph::checked(5, pairs_of_five(), {{0, 2}, {2, 4}, {4, 6}});
  PathConstraints c{3, 3, true, 0, 6};
  EXPECT_FALSE(has_good_path(g, c));
  EXPECT_EQ(explain_rejection(g, c), RejectReason::NoSkipInPath);
}

TEST(TestConstraints, NoPathReason) {
  const auto g = LayeredGraph::checked(5, pairs_of_five(), {{0, 2}});
  EXPECT_EQ(explain_rejection(g, regime_constraints(Experiment::Exp1, 5, 0, 8)), RejectReason::NoPath);
}

TEST(TestConstraints, Exp2AcceptsSevenAndThreeLinkPaths) {
  // Layers: {0}, {1,2}, {3,4}, {5,6}, {7}. 0-1-5-7 is 3 links (1->5 skips);
  // 0-1-2-3-4-5-6-7 is 7 links.
  const auto g = LayeredGraph::checked(5, {1, 2, 2, 3, 3, 4, 4, 5},
                                       {{0, 1}, {1, 5}, {5, 7}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  const TreatmentSpec spec{8, 5, 0.25, 0.25, Experiment::Exp2};
  const auto c = regime_constraints(Experiment::Exp2, 5, 0, 7);
  EXPECT_EQ(c.maxLinks, 7u);
  EXPECT_FALSE(c.requireSkip);
  std::set<std::size_t> lengths;
  for (const auto& p : good_paths(g, c)) lengths.insert(p.link_count());
  EXPECT_TRUE(lengths.contains(3));
  EXPECT_TRUE(lengths.contains(7));
  const auto v = test_constraints(g, spec, 1, default_display_fit(Experiment::Exp2));
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.source, 0u);
  EXPECT_EQ(v.destination, 7u);
}

TEST(TestConstraints, DisplayFitRejection) {
  const auto g = LayeredGraph::checked(5, {1, 2, 2, 3, 3, 4, 4, 5}, {{0, 1}, {1, 5}, {5, 7}});
  const TreatmentSpec spec{8, 5, 0.25, 0.25, Experiment::Exp2};
  const auto v = test_constraints(g, spec, 1, DisplayFit{10, 10, 8});
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, RejectReason::DoesNotFit);
}

TEST(GenerateUntilValid, DeterministicAndVerified) {
  const TreatmentSpec s{100, 10, 0.25, 0.25, Experiment::Exp1};
  const auto a = generate_until_valid(s, 9);
  const auto b = generate_until_valid(s, 9);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.source, b.source);
  EXPECT_EQ(a.destination, b.destination);
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_EQ(a.graph.layer_of(a.source), 1);
  EXPECT_EQ(a.graph.layer_of(a.destination), 10);
  EXPECT_TRUE(oracle::some_good_path(a.graph, regime_constraints(Experiment::Exp1, 10, a.source, a.destination)));
}

TEST(GenerateUntilValid, ExhaustsWhenNothingFits) {
  try {
    generate_until_valid({50, 5, 0.25, 0.25, Experiment::Exp1}, 0, 5, DisplayFit{1, 1, 8});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExhaustedAttempts);
  }
}

TEST(GenerateUntilValid, HugeSkipDensityIsInfeasible) {
  EXPECT_THROW(generate_until_valid({10, 5, 1.0, 1000.0, Experiment::Exp1}, 0, 10), Error);
}

TEST(GenerateUntilValid, RejectsAtLeastOneAttempt) {
  EXPECT_THROW(generate_until_valid({50, 5, 0.25, 0.25, Experiment::Exp1}, 0, 0), Error);
}

TEST(FitsDisplay, Exp1GridRarelyRejectedForSize) {
  std::size_t graphs = 0, misfits = 0;
  for (const auto& spec : treatment_grid(Experiment::Exp1)) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto gg = generate_until_valid(spec, seed, 1000);
      graphs += gg.attempts;
      const auto it = gg.rejections.find(RejectReason::DoesNotFit);
      if (it != gg.rejections.end()) misfits += it->second;
    }
  }
  EXPECT_LT(static_cast<double>(misfits), 0.02 * static_cast<double>(graphs));
}

TEST(TreatmentGrid, Shapes) {
  EXPECT_EQ(treatment_grid(Experiment::Exp1).size(), 36u);
  EXPECT_EQ(treatment_grid(Experiment::Exp2).size(), 24u);
  EXPECT_EQ(regime_constraints(Experiment::Exp2, 15, 0, 1).maxLinks, 22u);
  EXPECT_EQ(regime_constraints(Experiment::Exp1, 15, 0, 1).maxLinks, 13u);
}
