#include <gtest/gtest.h>

#include <cmath>

#include "chordsum/msc.hpp"
#include "chordsum/oracle.hpp"
#include "support/graphs.hpp"

using namespace chordsum;
namespace ts = testing_support;

namespace {

ConfigLpSolution exact_lp(const WeightedGraph& g, double rho = 1.0) {
  auto peo = require_chordal(g);
  return solve_config_lp(g, peo, exact_mkcs_oracle(g, peo), rho);
}

void expect_proper(const WeightedGraph& g, const Coloring& c) {
  EXPECT_TRUE(ts::proper_by_matrix(g, c.colors()));
  double s = 0;
  for (std::size_t v = 0; v < g.size(); ++v) s += g.weight(static_cast<Vertex>(v)) * c.color(static_cast<Vertex>(v));
  EXPECT_NEAR(s, c.objective(), 1e-9 * (1 + s));
}

}  // namespace

TEST(ConfigLp, SmallExamples) {
  EXPECT_NEAR(exact_lp(ts::make(1, {})).cost, 1.0, 1e-9);
  EXPECT_NEAR(exact_lp(ts::complete(2)).cost, 3.0, 1e-9);
  EXPECT_NEAR(exact_lp(ts::path(3)).cost, 4.0, 1e-9);
  EXPECT_NEAR(exact_lp(ts::make(0, {})).cost, 0.0, 1e-12);
}

TEST(ConfigLp, RejectsBadParameters) {
  auto g = ts::path(3);
  auto peo = require_chordal(g);
  EXPECT_THROW(solve_config_lp(g, peo, exact_mkcs_oracle(g, peo), 0.0), std::invalid_argument);
  EXPECT_THROW(solve_config_lp(g, peo, exact_mkcs_oracle(g, peo), 1.0, 0.5), std::invalid_argument);
}

TEST(ConfigLp, SolutionsValidateAndLowerBoundTheOptimum) {
  Rng rng(71);
  for (int t = 0; t < 120; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 8), uniform_below(rng, 2) == 1);
    auto sol = exact_lp(g);
    EXPECT_NO_THROW(sol.validate(g));
    EXPECT_LE(sol.cost, oracle::brute_msc(g).objective() + 1e-7);
    double direct = 0;
    for (std::size_t v = 0; v < g.size(); ++v) direct += g.weight(static_cast<Vertex>(v)) * sol.fractional_color(static_cast<Vertex>(v));
    EXPECT_NEAR(direct, sol.cost, 1e-9 * (1 + direct));
  }
}

TEST(ConfigLp, ValidateCatchesTampering) {
  auto g = ts::complete(2);
  auto sol = exact_lp(g);
  auto broken = sol;
  broken.x[0] += 0.5;
  EXPECT_THROW(broken.validate(g), InvariantViolation);
  auto over = sol;
  for (auto& col : over.columns)
    if (col.k == 1) col.z += 2.0;
  EXPECT_THROW(over.validate(g), InvariantViolation);
}

TEST(ConfigLp, ColumnGenerationMatchesFullEnumeration) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : ts::all_chordal_graphs(n)) EXPECT_NEAR(exact_lp(g).cost, oracle::full_config_lp(g).cost, 1e-6);
}

TEST(ConfigLp, ApproximateOracleRelaxesMass) {
  auto g = ts::path(4);
  auto peo = require_chordal(g);
  auto sol = solve_config_lp(g, peo, exact_mkcs_oracle(g, peo), 0.5);
  EXPECT_NO_THROW(sol.validate(g));
  EXPECT_LE(sol.cost, exact_lp(g).cost + 1e-9);
}

TEST(GeometricSchedule, CapsAndValidation) {
  auto s = GeometricSchedule::from_offset(2.0, 1.5);
  EXPECT_EQ(s.caps(10), (std::vector<int>{1, 3, 6, 10}));
  EXPECT_NEAR(GeometricSchedule::from_exponent(4.0, 0.5).h, 2.0, 1e-12);
  EXPECT_THROW(GeometricSchedule::from_offset(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(GeometricSchedule::from_offset(2.0, 2.0), std::invalid_argument);
  EXPECT_THROW(GeometricSchedule::from_exponent(2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(check_growth_factor(8.0, 1.0), std::invalid_argument);
  EXPECT_THROW(check_growth_factor(2.5, 0.5), std::invalid_argument);
  EXPECT_NO_THROW(check_growth_factor(1.9, 0.5));
}

TEST(MscRound, SingleVertexGetsColorOne) {
  auto g = ts::make(1, {}, {3.0});
  auto sol = exact_lp(g);
  Rng rng(1);
  auto c = msc_round(g, sol, GeometricSchedule::from_exponent(2.0, 0.3), rng);
  EXPECT_EQ(c.color(0), 1);
}

TEST(MscRound, EdgeMeanWithinTheRatio) {
  auto g = ts::complete(2);
  auto sol = exact_lp(g);
  const double c = optimal_c(1.0, 1.0).c;
  Rng rng(73);
  const std::size_t runs = 20000;
  double sum = 0, sq = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    auto sched = GeometricSchedule::from_exponent(c, uniform01(rng));
    auto col = msc_round(g, sol, sched, rng);
    expect_proper(g, col);
    sum += col.objective();
    sq += col.objective() * col.objective();
  }
  double mean = sum / runs;
  double se = std::sqrt(std::max(0.0, sq / runs - mean * mean) / runs);
  EXPECT_LE(mean, 1.796 * 3.0 + 3 * se);
}

TEST(MscRound, BlocksAndColorsStayBounded) {
  Rng rng(79);
  for (int t = 0; t < 60; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 10), true);
    const double rho = uniform_below(rng, 2) ? 1.0 : 0.7;
    auto sol = exact_lp(g, rho);
    const double c = 1.2 + 0.5 * uniform01(rng);
    auto sched = GeometricSchedule::from_exponent(c, uniform01(rng));
    RoundingTrace trace;
    auto col = msc_round(g, sol, sched, rng, &trace);
    expect_proper(g, col);
    EXPECT_LE(col.max_color(), trace.colors_reserved);
    EXPECT_GE(trace.blocks, 1u);
  }
}

TEST(MscRound, DerandomizedBeatsTheMonteCarloMean) {
  Rng rng(83);
  for (int t = 0; t < 8; ++t) {
    auto g = ts::random_chordal(rng, 3 + uniform_below(rng, 5), true);
    auto peo = require_chordal(g);
    auto sol = exact_lp(g);
    const double c = optimal_c(1.0, 1.0).c;
    auto det = msc_round_derandomized(g, peo, sol, c);
    expect_proper(g, det.coloring);
    EXPECT_GT(det.offsets_tried, 0u);
    double sum = 0;
    const std::size_t runs = 10000;
    for (std::size_t r = 0; r < runs; ++r)
      sum += msc_round(g, sol, GeometricSchedule::from_exponent(c, uniform01(rng)), rng).objective();
    EXPECT_LE(det.coloring.objective(), sum / runs + 1e-9) << "case " << t;
  }
}

TEST(CandidateOffsets, CoverEveryCapSequence) {
  const double c = 2.7;
  const std::size_t n = 9;
  std::set<std::vector<int>> from_candidates, from_grid;
  for (double h : candidate_offsets(n, c)) {
    EXPECT_GE(h, 1.0);
    EXPECT_LT(h, c);
    from_candidates.insert(GeometricSchedule::from_offset(c, h).caps(n));
  }
  for (int i = 0; i < 5000; ++i) from_grid.insert(GeometricSchedule::from_offset(c, 1.0 + (c - 1.0) * i / 5000.0).caps(n));
  for (const auto& caps : from_grid) EXPECT_TRUE(from_candidates.count(caps));
}

TEST(RatioBound, OptimalGrowthFactor) {
  auto og = optimal_c(1.0, 1.0);
  EXPECT_NEAR(og.c * std::log(og.c) - og.c - 1.0, 0.0, 1e-6);
  EXPECT_GE(og.ratio, 1.7955);
  EXPECT_LE(og.ratio, 1.7960);
  for (int i = 1; i < 1000; ++i) {
    double c = 1.0 + (std::exp(2.0) - 1.0) * i / 1000.0;
    EXPECT_GE(ratio_bound(1.0, 1.0, c), og.ratio - 1e-12);
  }
  EXPECT_NEAR(ratio_bound(1.0, 2.0, og.c), 2 * og.ratio, 1e-12);
  auto rough = optimal_c(0.9, 1.0);
  EXPECT_LT(rough.c, 1.0 / 0.1);
  EXPECT_GT(rough.ratio, og.ratio);
  EXPECT_THROW(optimal_c(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ratio_bound(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(SigmaCheck, MatchesClosedForm) {
  for (double c : {2.0, 3.591})
    for (double k : {1.0, 7.0, 50.0}) {
      auto s = sigma_expectation_check(c, k, 200000, 5);
      EXPECT_NEAR(s.empirical, s.closed_form, 0.01 * s.closed_form);
    }
  EXPECT_THROW(sigma_expectation_check(1.0, 1.0, 10), std::invalid_argument);
}

TEST(PlanMsc, ChoosesAccuracyAndGrowth) {
  auto g = ts::complete(3);
  auto plan = plan_msc(require_chordal(g), 0.1);
  EXPECT_GT(plan.epsilon_prime, 0.0);
  EXPECT_LE(plan.epsilon_prime, 0.1);
  EXPECT_DOUBLE_EQ(plan.rho, 1.0);
  EXPECT_NEAR(plan.c, optimal_c(1.0, 1.0).c, 1e-9);
  EXPECT_THROW(plan_msc(require_chordal(g), 1.0), std::invalid_argument);
}

TEST(MscApprox, CompleteAndEmptyGraphs) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto kn = ts::complete(n);
    auto r = msc_approx(kn, 0.1);
    expect_proper(kn, r.coloring);
    EXPECT_DOUBLE_EQ(r.coloring.objective(), n * (n + 1) / 2.0);
    auto empty = ts::make(n, {});
    EXPECT_DOUBLE_EQ(msc_approx(empty, 0.1).coloring.objective(), static_cast<double>(n));
  }
  EXPECT_THROW(msc_approx(ts::cycle(4), 0.1), NotChordal);
}

TEST(MscApprox, WithinRatioOfOptimum) {
  Rng rng(89);
  for (int t = 0; t < 80; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 8), uniform_below(rng, 2) == 1);
    ConfigLpSolution lp;
    auto r = msc_approx(g, 0.1, {}, std::nullopt, &lp);
    expect_proper(g, r.coloring);
    double opt = oracle::brute_msc(g).objective();
    EXPECT_LE(r.coloring.objective(), 1.80 * opt + 1e-9) << "case " << t;
    EXPECT_LE(r.lp_cost, opt + 1e-7);
    EXPECT_NEAR(lp.cost, r.lp_cost, 1e-12);
  }
}

TEST(Baselines, GreedyFourApproximation) {
  auto k3 = ts::complete(3);
  EXPECT_DOUBLE_EQ(greedy_msc_4approx(k3, require_chordal(k3)).objective(), 6.0);
  auto star = ts::star(3);
  EXPECT_DOUBLE_EQ(greedy_msc_4approx(star, require_chordal(star)).objective(), 5.0);
  Rng rng(97);
  for (int t = 0; t < 150; ++t) {
    auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 8), true);
    auto peo = require_chordal(g);
    double opt = oracle::brute_msc(g).objective();
    auto greedy = greedy_msc_4approx(g, peo);
    expect_proper(g, greedy);
    EXPECT_LE(greedy.objective(), 4 * opt + 1e-9);
    auto cover = coverage_concat_msc(g, peo, optimal_c(1.0, 1.0).c);
    expect_proper(g, cover);
    EXPECT_GE(cover.objective(), opt - 1e-9);
  }
}
