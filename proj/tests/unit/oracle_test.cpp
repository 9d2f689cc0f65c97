#include <gtest/gtest.h>

#include "chordsum/oracle.hpp"
#include "support/graphs.hpp"

using namespace chordsum;
namespace ts = testing_support;

TEST(KColoring, SmallGraphs) {
  EXPECT_FALSE(oracle::is_k_colorable(ts::complete(4), 3));
  EXPECT_TRUE(oracle::is_k_colorable(ts::complete(4), 4));
  EXPECT_FALSE(oracle::is_k_colorable(ts::cycle(5), 2));
  EXPECT_TRUE(oracle::is_k_colorable(ts::cycle(6), 2));
  auto c = oracle::k_coloring(ts::cycle(5), 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(ts::proper_by_matrix(ts::cycle(5), *c));
}

TEST(KColoring, AgreesWithCliqueNumberOnChordalGraphs) {
  Rng rng(101);
  for (int t = 0; t < 150; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 12), false);
    const int omega = static_cast<int>(oracle::brute_clique_number(g));
    EXPECT_TRUE(oracle::is_k_colorable(g, omega));
    if (omega > 1) { EXPECT_FALSE(oracle::is_k_colorable(g, omega - 1)); }
  }
}

TEST(BruteMkcs, Examples) {
  EXPECT_DOUBLE_EQ(oracle::brute_mkcs(ts::complete(3), 2).weight, 2.0);
  auto c5 = ts::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {1, 2, 3, 4, 5});
  auto r = oracle::brute_mkcs(c5, 2);
  EXPECT_DOUBLE_EQ(r.weight, 14.0);
  EXPECT_TRUE(ts::proper_by_matrix(induced_subgraph(c5, r.selected), r.witness));
}

TEST(BruteMsc, Examples) {
  EXPECT_DOUBLE_EQ(oracle::brute_msc(ts::complete(3)).objective(), 6.0);
  EXPECT_DOUBLE_EQ(oracle::brute_msc(ts::path(3)).objective(), 4.0);
  EXPECT_DOUBLE_EQ(oracle::brute_msc(ts::star(4)).objective(), 6.0);
  // A heavy center moves to color 1 and pushes the leaves up.
  auto heavy = ts::make(3, {{0, 1}, {1, 2}}, {1, 10, 1});
  EXPECT_DOUBLE_EQ(oracle::brute_msc(heavy).objective(), 14.0);
  // Sum coloring can need more colors than the chromatic number.
  auto tree = ts::make(8, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {1, 6}, {0, 7}});
  auto c = oracle::brute_msc(tree);
  EXPECT_TRUE(ts::proper_by_matrix(tree, c.colors()));
}

TEST(BruteMsc, NeverWorseThanAnyColoringItChecks) {
  Rng rng(103);
  for (int t = 0; t < 100; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 8), true);
    auto best = oracle::brute_msc(g);
    EXPECT_TRUE(ts::proper_by_matrix(g, best.colors()));
    EXPECT_LE(best.objective(), greedy_color(g, require_chordal(g)).objective() + 1e-9);
  }
}

TEST(Oracles, BudgetsAreEnforced) {
  EXPECT_THROW(oracle::brute_msc(ts::path(11)), oracle::BudgetExceeded);
  EXPECT_THROW(oracle::brute_mkcs(ts::path(13), 1), oracle::BudgetExceeded);
  EXPECT_THROW(oracle::full_config_lp(ts::path(9)), oracle::BudgetExceeded);
  oracle::OracleBudget tight;
  tight.max_msc_vertices = 3;
  EXPECT_THROW(oracle::brute_msc(ts::path(4), tight), oracle::BudgetExceeded);
}

TEST(Oracles, ChordalityAndCliques) {
  EXPECT_FALSE(oracle::brute_is_chordal(ts::cycle(4)));
  EXPECT_TRUE(oracle::brute_is_chordal(ts::complete(5)));
  EXPECT_EQ(oracle::brute_clique_number(ts::cycle(5)), 2u);
  EXPECT_DOUBLE_EQ(oracle::brute_mwis_weight(ts::cycle(5)), 2.0);
}

TEST(FullConfigLp, SmallCosts) {
  EXPECT_NEAR(oracle::full_config_lp(ts::complete(2)).cost, 3.0, 1e-9);
  EXPECT_NEAR(oracle::full_config_lp(ts::path(3)).cost, 4.0, 1e-9);
  auto r = oracle::full_config_lp(ts::complete(3));
  EXPECT_NEAR(r.cost, 6.0, 1e-9);
  EXPECT_EQ(r.columns, 3u + 6u + 7u);
}
