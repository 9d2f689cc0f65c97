// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chordsum/gen.hpp"
#include "chordsum/mkcs.hpp"
#include "chordsum/msc.hpp"
#include "chordsum/oracle.hpp"
#include "support/graphs.hpp"

using namespace chordsum;
namespace ts = testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

// Properness tally for every coloring produced in this run.
std::size_t colorings_checked = 0;
std::size_t improper = 0;

void check_coloring(const WeightedGraph& g, const std::vector<int>& colors) {
  ++colorings_checked;
  if (!ts::proper_by_matrix(g, colors)) ++improper;
}

void check_mkcs(const WeightedGraph& g, const MkcsResult& r) {
  check_coloring(induced_subgraph(g, r.selected), r.witness);
}

void report(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct SmallMkcs {
  WeightedGraph g;
  int k;
  double opt;
};

struct SmallMsc {
  WeightedGraph g;
  double opt;
};

}  // namespace

int main() {
  Rng rng(20240611);

  report(1, "optimal growth constant", 1.0, [] {
    auto og = optimal_c(1.0, 1.0);
    double resid = og.c * std::log(og.c) - og.c - 1.0;
    bool ok = std::abs(resid) <= 1e-6 && og.ratio >= 1.7955 && og.ratio <= 1.7960;
    return Outcome{ok, "c* = " + fmt("%.9f", og.c) + ", ratio = " + fmt("%.9f", og.ratio) +
                           ", residual = " + fmt("%.2e", resid)};
  });

  // Criterion 2 instances are reused by 4 and 8.
  std::vector<SmallMkcs> mkcs_set;
  report(2, "exact DP equals brute force", 120.0, [&] {
    std::size_t mismatches = 0;
    for (int t = 0; t < 200; ++t) {
      auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 10), t % 4 != 0);
      auto rep = build_clique_tree(g, require_chordal(g));
      for (int k = 1; k <= 3; ++k) {
        auto dp = exact_mkcs_dp(g, rep, k);
        auto brute = oracle::brute_mkcs(g, k);
        check_mkcs(g, dp);
        check_mkcs(g, brute);
        if (dp.weight != brute.weight) ++mismatches;
        mkcs_set.push_back({g, k, brute.weight});
      }
    }
    return Outcome{mismatches == 0 && mkcs_set.size() >= 500,
                   std::to_string(mkcs_set.size()) + " instances, " + std::to_string(mismatches) + " mismatches"};
  });

  report(3, "derandomized rounding bound", 300.0, [&] {
    std::size_t runs = 0, violations = 0, binding = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 100; ++t) {
      // Dense families so that k = 27 and often k = 64 fall below the clique number.
      gen::GenSpec spec;
      spec.n = 40 + uniform_below(rng, 21);
      spec.seed = rng();
      spec.weights = t % 3 == 0 ? gen::WeightKind::unit : gen::WeightKind::uniform_int;
      if (t % 2 == 0) {
        spec.family = gen::Family::ktree;
        spec.param = static_cast<double>(20 + uniform_below(rng, spec.n - 20));
      } else {
        spec.family = gen::Family::interval;
        spec.param = 0.6 + 0.4 * uniform01(rng);
      }
      auto g = gen::generate(spec);
      auto peo = require_chordal(g);
      for (int k : {27, 64}) {
        auto lp = solve_kcolor_lp(g, peo, k);
        auto r = round_mkcs_derandomized(g, peo, lp, k);
        check_mkcs(g, r);
        const double bound = (1.0 - 2.0 * std::cbrt(1.0 / k)) * lp.objective;
        if (r.weight < bound - 1e-9 * (1 + lp.objective)) ++violations;
        if (static_cast<std::size_t>(k) < peo.clique_number()) {
          ++binding;
          worst = std::min(worst, r.weight / lp.objective);
        }
        ++runs;
      }
    }
    return Outcome{violations == 0 && runs >= 200,
                   std::to_string(runs) + " runs (" + std::to_string(binding) + " with k below the clique number), " +
                       std::to_string(violations) + " violations, min weight/LP there = " + fmt("%.4f", worst)};
  });

  // Criterion 5 instances are reused by 4 and 8.
  std::vector<SmallMsc> msc_set;
  report(5, "end-to-end ratio at most 1.80", 600.0, [&] {
    std::size_t violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 320; ++t) {
      auto g = ts::random_chordal(rng, 1 + uniform_below(rng, 8), t % 2 == 1, 10);
      auto opt = oracle::brute_msc(g);
      check_coloring(g, opt.colors());
      auto r = msc_approx(g, 0.1);
      check_coloring(g, r.coloring.colors());
      double ratio = r.coloring.objective() / opt.objective();
      worst = std::max(worst, ratio);
      if (r.coloring.objective() > 1.80 * opt.objective() + 1e-9) ++violations;
      msc_set.push_back({g, opt.objective()});
    }
    return Outcome{violations == 0 && msc_set.size() >= 300, std::to_string(msc_set.size()) + " instances, " +
                                                                 std::to_string(violations) +
                                                                 " violations, worst ratio = " + fmt("%.4f", worst)};
  });

  report(4, "LP relaxations bound optima", 0.0, [&] {
    std::size_t violations = 0;
    for (const auto& s : mkcs_set) {
      auto lp = solve_kcolor_lp(s.g, require_chordal(s.g), s.k);
      if (lp.objective < s.opt - 1e-7) ++violations;
    }
    for (const auto& s : msc_set) {
      auto peo = require_chordal(s.g);
      auto sol = solve_config_lp(s.g, peo, exact_mkcs_oracle(s.g, peo));
      sol.validate(s.g);
      if (sol.cost > s.opt + 1e-7) ++violations;
    }
    return Outcome{violations == 0, std::to_string(mkcs_set.size() + msc_set.size()) + " checks, " +
                                        std::to_string(violations) + " violations"};
  });

  report(6, "column generation fidelity", 0.0, [&] {
    std::size_t graphs = 0, mismatches = 0;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n)
      for (const auto& g : ts::all_chordal_graphs(n)) {
        auto peo = require_chordal(g);
        double cg = solve_config_lp(g, peo, exact_mkcs_oracle(g, peo)).cost;
        double full = oracle::full_config_lp(g).cost;
        worst = std::max(worst, std::abs(cg - full));
        if (std::abs(cg - full) > 1e-6) ++mismatches;
        ++graphs;
      }
    return Outcome{mismatches == 0, std::to_string(graphs) + " graphs (all chordal graphs up to 6 vertices), " +
                                        std::to_string(mismatches) + " mismatches, max gap = " + fmt("%.2e", worst)};
  });

  report(7, "sigma expectation identity", 10.0, [] {
    bool ok = true;
    double worst = 0.0;
    for (double c : {2.0, 3.591})
      for (double k : {1.0, 7.0, 50.0}) {
        auto s = sigma_expectation_check(c, k, 1000000, 17);
        double rel = std::abs(s.empirical - s.closed_form) / s.closed_form;
        worst = std::max(worst, rel);
        if (rel > 0.01) ok = false;
      }
    return Outcome{ok, "6 cells, worst relative error = " + fmt("%.5f", worst)};
  });

  report(8, "baseline bounds", 0.0, [&] {
    std::size_t violations = 0;
    const double coverage = 1.0 - std::exp(-1.0);
    for (const auto& s : mkcs_set) {
      auto r = greedy_max_coverage_mkcs(s.g, require_chordal(s.g), s.k);
      check_mkcs(s.g, r);
      if (r.weight < coverage * s.opt - 1e-9) ++violations;
    }
    for (const auto& s : msc_set) {
      auto peo = require_chordal(s.g);
      auto c = greedy_msc_4approx(s.g, peo);
      check_coloring(s.g, c.colors());
      if (c.objective() > 4.0 * s.opt + 1e-9) ++violations;
      auto cov = coverage_concat_msc(s.g, peo, optimal_c(1.0, 1.0).c);
      check_coloring(s.g, cov.colors());
    }
    return Outcome{violations == 0, std::to_string(mkcs_set.size() + msc_set.size()) + " checks, " +
                                        std::to_string(violations) + " violations"};
  });

  report(9, "pairwise independence", 0.0, [&] {
    std::size_t pairs = 0, bad = 0;
    std::uint64_t max_p = 0;
    for (std::size_t n = 2; n <= 20; ++n) {
      std::vector<double> prob(n);
      for (auto& q : prob) q = uniform01(rng);
      PairwiseSampleSpace space(n, prob, 1.0 / static_cast<double>(n));
      const std::uint64_t p = space.prime(), seeds = space.seed_count();
      max_p = std::max(max_p, p);
      if (p > 23) ++bad;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          std::uint64_t joint[2][2] = {{0, 0}, {0, 0}}, mu[2] = {0, 0}, mv[2] = {0, 0};
          for (std::uint64_t s = 0; s < seeds; ++s) {
            int a = space.member(s, u), b = space.member(s, v);
            ++joint[a][b];
            ++mu[a];
            ++mv[b];
          }
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              if (joint[a][b] * seeds != mu[a] * mv[b]) ++bad;
          ++pairs;
        }
    }
    return Outcome{bad == 0, std::to_string(pairs) + " pairs over n = 2..20, largest p = " + std::to_string(max_p) +
                                 ", " + std::to_string(bad) + " non-factoring cells"};
  });

  report(10, "every coloring is proper", 0.0, [] {
    return Outcome{improper == 0 && colorings_checked > 0,
                   std::to_string(colorings_checked) + " colorings rechecked, " + std::to_string(improper) + " improper"};
  });

  std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
  return failures == 0 ? 0 : 1;
}
