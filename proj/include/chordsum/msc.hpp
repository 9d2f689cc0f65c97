#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chordsum/chordal.hpp"
#include "chordsum/clique_tree.hpp"
#include "chordsum/graph.hpp"
#include "chordsum/lp/column_generation.hpp"
#include "chordsum/lp/linear_program.hpp"
#include "chordsum/mkcs.hpp"
#include "chordsum/random.hpp"

// Minimum sum coloring via the configuration LP.
namespace chordsum {

/// A set C used for the first k colors; its witness colors G[C] with at most
/// floor(γ k) colors. Parallel vectors, ascending vertex ids.
struct ConfigColumn {
  int k = 0;
  std::vector<Vertex> vertices;
  std::vector<int> witness;
  double z = 0.0;
};

struct DualPrices {
  std::vector<double> alpha;  // per vertex
  std::vector<double> beta;   // per color k = 1..n, at index k-1
  std::vector<double> theta;  // per (v, k), at index v * n + k - 1
};

inline int color_budget(double gamma, int k) {
  return static_cast<int>(std::floor(gamma * k + 1e-12));
}

/// Fractional solution of the (ρ, γ)-relaxed configuration LP.
struct ConfigLpSolution {
  std::size_t n = 0;
  double rho = 1.0;
  double gamma = 1.0;
  std::vector<double> x;  // x_{v,k} at v * n + k - 1
  std::vector<ConfigColumn> columns;
  DualPrices duals;
  double cost = 0.0;
  std::size_t iterations = 0;
  std::size_t columns_generated = 0;
  lp::LinearProgram master;

  double x_at(Vertex v, int k) const { return x[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(k - 1)]; }

  /// Σ_k k x_{v,k}.
  double fractional_color(Vertex v) const {
    double s = 0.0;
    for (int k = 1; k <= static_cast<int>(n); ++k) s += k * x_at(v, k);
    return s;
  }

  /// Throws InvariantViolation if any constraint family is violated by more
  /// than `tol`, or a column's witness is not a proper floor(γk)-coloring.
  void validate(const WeightedGraph& g, double tol = 1e-7) const {
    if (g.size() != n || x.size() != n * n) throw InvariantViolation("configuration LP solution has the wrong size");
    std::vector<double> cover(n * n, 0.0), mass(n, 0.0);
    for (const auto& col : columns) {
      if (col.k < 1 || col.k > static_cast<int>(n)) throw InvariantViolation("column color index out of range");
      if (col.z < -tol) throw InvariantViolation("negative column value");
      MkcsResult::of(g, col.vertices, col.witness, color_budget(gamma, col.k));
      mass[col.k - 1] += col.z;
      for (Vertex v : col.vertices) cover[static_cast<std::size_t>(v) * n + col.k - 1] += col.z;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (mass[k] > 1.0 / rho + tol) throw InvariantViolation("column mass exceeds 1/rho at k = " + std::to_string(k + 1));
    for (std::size_t v = 0; v < n; ++v) {
      double prefix = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double xv = x[v * n + k];
        if (xv < -tol) throw InvariantViolation("negative x value");
        prefix += xv;
        if (cover[v * n + k] + tol < prefix)
          throw InvariantViolation("vertex " + std::to_string(v) + " is under-covered at k = " + std::to_string(k + 1));
      }
      if (std::abs(prefix - 1.0) > tol) throw InvariantViolation("x values of a vertex do not sum to 1");
    }
  }
};

/// Returns a set whose induced subgraph is floor(γk)-colorable and whose
/// weight (under the graph's weights) is at least ρ times the best
/// k-colorable one.
using MkcsOracle = std::function<MkcsResult(const WeightedGraph&, int k)>;

/// Exact pricing through the clique-tree dynamic program. Color budgets at or
/// above the clique number take every vertex. The oracle keeps a reference to
/// `peo`.
inline MkcsOracle exact_mkcs_oracle(const WeightedGraph& g, const PerfectEliminationOrder& peo, DpLimits limits = {}) {
  limits.max_k = std::numeric_limits<int>::max();
  limits.max_n = std::numeric_limits<std::size_t>::max();
  return [rep = build_clique_tree(g, peo), limits](const WeightedGraph& h, int k) {
    return exact_mkcs_dp(h, rep, k, limits);
  };
}

/// The (1-ε)-approximate oracle of mkcs_ptas, reusing a known PEO.
inline MkcsOracle ptas_mkcs_oracle(const WeightedGraph& g, const PerfectEliminationOrder& peo, double epsilon,
                                   DpLimits limits = {}) {
  limits.max_k = std::numeric_limits<int>::max();
  limits.max_n = std::numeric_limits<std::size_t>::max();
  return [rep = build_clique_tree(g, peo), &peo, epsilon, limits](const WeightedGraph& h, int k) {
    if (static_cast<double>(k) <= 8.0 / (epsilon * epsilon * epsilon) ||
        static_cast<std::size_t>(k) >= peo.clique_number())
      return exact_mkcs_dp(h, rep, k, limits);
    return round_mkcs_derandomized(h, peo, solve_kcolor_lp(h, peo, k), k);
  };
}

struct ConfigLpOptions {
  lp::ColumnGenerationOptions column_generation;
  /// A column enters when θ(C) > β_k + tol (1 + β_k).
  double pricing_tol = 1e-9;
};

namespace detail {

inline ConfigColumn make_column(int k, const MkcsResult& r) { return ConfigColumn{k, r.selected, r.witness, 0.0}; }

}  // namespace detail

/// Column generation on the configuration LP: variables x_{v,k} and z_{C,k};
/// rows Σ_k x_{v,k} = 1, Σ_C z_{C,k} <= 1/ρ, Σ_{C∋v} z_{C,k} >= Σ_{k'<=k} x_{v,k'}.
/// Each k starts with the empty column, plus the all-vertices column once
/// floor(γk) reaches the clique number. The pricer for k hands θ_{·,k} to the
/// oracle as vertex weights.
inline ConfigLpSolution solve_config_lp(const WeightedGraph& g, const PerfectEliminationOrder& peo,
                                        const MkcsOracle& oracle, double rho = 1.0, double gamma = 1.0,
                                        const ConfigLpOptions& options = {}) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be at least 1");
  const std::size_t n = g.size();
  const int ni = static_cast<int>(n);
  auto row1 = [&](std::size_t v) { return static_cast<int>(v); };
  auto row2 = [&](int k) { return ni + k - 1; };
  auto row3 = [&](std::size_t v, int k) { return 2 * ni + static_cast<int>(v) * ni + k - 1; };

  lp::LinearProgram master(lp::Sense::minimize);
  for (std::size_t v = 0; v < n; ++v)
    for (int k = 1; k <= ni; ++k)
      master.add_variable(g.weight(static_cast<Vertex>(v)) * k, 0.0, lp::kInfinity,
                          "x_" + std::to_string(v) + "_" + std::to_string(k));
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<lp::Term> t;
    for (int k = 1; k <= ni; ++k) t.push_back({static_cast<int>(v) * ni + k - 1, 1.0});
    master.add_constraint(std::move(t), lp::Relation::equal, 1.0, "assign_" + std::to_string(v));
  }
  for (int k = 1; k <= ni; ++k)
    master.add_constraint({}, lp::Relation::less_equal, 1.0 / rho, "mass_" + std::to_string(k));
  for (std::size_t v = 0; v < n; ++v)
    for (int k = 1; k <= ni; ++k) {
      std::vector<lp::Term> t;
      for (int kk = 1; kk <= k; ++kk) t.push_back({static_cast<int>(v) * ni + kk - 1, -1.0});
      master.add_constraint(std::move(t), lp::Relation::greater_equal, 0.0,
                            "cover_" + std::to_string(v) + "_" + std::to_string(k));
    }

  std::vector<ConfigColumn> pool;
  std::set<std::pair<int, std::vector<Vertex>>> seen;
  auto as_lp_column = [&](const ConfigColumn& col) {
    lp::Column c;
    c.name = "z" + std::to_string(pool.size()) + "_" + std::to_string(col.k);
    c.entries.push_back({row2(col.k), 1.0});
    for (Vertex v : col.vertices) c.entries.push_back({row3(static_cast<std::size_t>(v), col.k), 1.0});
    return c;
  };
  auto push_column = [&](ConfigColumn col) {
    if (!seen.emplace(col.k, col.vertices).second) return false;
    pool.push_back(std::move(col));
    return true;
  };

  const Coloring full = greedy_color(g, peo);
  const int omega = static_cast<int>(peo.clique_number());
  for (int k = 1; k <= ni; ++k) {
    push_column(ConfigColumn{k, {}, {}, 0.0});
    if (color_budget(gamma, k) >= omega) {
      std::vector<Vertex> all(n);
      for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
      push_column(ConfigColumn{k, all, full.colors(), 0.0});
    }
  }
  for (const auto& col : pool) master.add_column(as_lp_column(col));
  const std::size_t first_z = n * n;
  const std::size_t seeded = pool.size();

  auto pricer = [&](const lp::LpSolution& sol) {
    std::vector<lp::Column> out;
    std::vector<double> theta(n);
    for (int k = 1; k <= ni; ++k) {
      const double beta = std::max(0.0, -sol.duals[row2(k)]);
      for (std::size_t v = 0; v < n; ++v) theta[v] = std::max(0.0, sol.duals[row3(v, k)]);
      MkcsResult best = oracle(g.reweighted(theta), k);
      double gain = 0.0;
      for (Vertex v : best.selected) gain += theta[v];
      if (gain <= beta + options.pricing_tol * (1.0 + beta)) continue;
      ConfigColumn col = detail::make_column(k, best);
      if (static_cast<int>(col.witness.empty() ? 0 : *std::max_element(col.witness.begin(), col.witness.end())) >
          color_budget(gamma, k))
        throw InvariantViolation("pricing oracle returned a set beyond the color budget");
      if (!push_column(col)) continue;
      out.push_back(as_lp_column(pool.back()));
    }
    return out;
  };

  lp::ColumnGenerationResult cg = lp::solve_with_column_generation(master, pricer, options.column_generation);

  ConfigLpSolution out;
  out.n = n;
  out.rho = rho;
  out.gamma = gamma;
  out.x.assign(cg.solution.primal.begin(), cg.solution.primal.begin() + static_cast<std::ptrdiff_t>(n * n));
  for (auto& v : out.x) v = std::max(0.0, v);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i].z = std::max(0.0, cg.solution.primal[first_z + i]);
  out.columns = std::move(pool);
  for (std::size_t v = 0; v < n; ++v)
    for (int k = 1; k <= ni; ++k) out.cost += g.weight(static_cast<Vertex>(v)) * k * out.x_at(static_cast<Vertex>(v), k);
  out.duals.alpha.resize(n);
  out.duals.beta.resize(n);
  out.duals.theta.resize(n * n);
  for (std::size_t v = 0; v < n; ++v) out.duals.alpha[v] = cg.solution.duals[row1(v)];
  for (int k = 1; k <= ni; ++k) out.duals.beta[k - 1] = std::max(0.0, -cg.solution.duals[row2(k)]);
  for (std::size_t v = 0; v < n; ++v)
    for (int k = 1; k <= ni; ++k) out.duals.theta[v * n + k - 1] = std::max(0.0, cg.solution.duals[row3(v, k)]);
  out.iterations = cg.iterations;
  out.columns_generated = out.columns.size() - seeded;
  out.master = std::move(cg.master);
  return out;
}

/// Breakpoints k_j = h c^j with h = c^Γ, and their integer caps
/// k'_j = min(n, floor(k_j)).
struct GeometricSchedule {
  double c = 0.0;
  double offset_exponent = 0.0;  // Γ in [0, 1)
  double h = 1.0;

  static GeometricSchedule from_exponent(double c, double exponent) {
    if (!(c > 1.0)) throw std::invalid_argument("growth factor c must exceed 1");
    if (!(exponent >= 0.0 && exponent < 1.0)) throw std::invalid_argument("offset exponent must lie in [0, 1)");
    return GeometricSchedule{c, exponent, std::pow(c, exponent)};
  }

  static GeometricSchedule from_offset(double c, double h) {
    if (!(c > 1.0)) throw std::invalid_argument("growth factor c must exceed 1");
    if (!(h >= 1.0 && h < c)) throw std::invalid_argument("offset h must lie in [1, c)");
    return GeometricSchedule{c, std::log(h) / std::log(c), h};
  }

  double breakpoint(int j) const { return h * std::pow(c, j); }

  int capped(int j, std::size_t n) const {
    double kj = breakpoint(j);
    if (kj >= static_cast<double>(n)) return static_cast<int>(n);
    return static_cast<int>(std::floor(kj));
  }

  /// k'_0, k'_1, ... up to and including the first that equals n.
  std::vector<int> caps(std::size_t n) const {
    std::vector<int> out;
    if (n == 0) return out;
    for (int j = 0;; ++j) {
      out.push_back(capped(j, n));
      if (out.back() == static_cast<int>(n)) break;
    }
    return out;
  }
};

inline void check_growth_factor(double c, double rho) {
  const double upper = rho >= 1.0 ? std::exp(2.0) : std::min(std::exp(2.0), 1.0 / (1.0 - rho));
  if (!(c > 1.0 && c < upper))
    throw std::invalid_argument("growth factor c = " + std::to_string(c) + " outside (1, " + std::to_string(upper) + ")");
}

namespace detail {

struct RoundState {
  std::vector<int> color;
  std::size_t uncolored;
};

// Colors every still-uncolored vertex from the greedy chordal coloring of the
// remaining induced subgraph, after `base`.
inline void finish_greedily(const WeightedGraph& g, const PerfectEliminationOrder& peo, RoundState& st, int base) {
  std::vector<Vertex> rest;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (st.color[v] == 0) rest.push_back(static_cast<Vertex>(v));
  if (rest.empty()) return;
  WeightedGraph sub = induced_subgraph(g, rest);
  Coloring c = greedy_color(sub, peo.restricted(sub, rest));
  for (std::size_t i = 0; i < rest.size(); ++i) st.color[rest[i]] = base + c.color(static_cast<Vertex>(i));
  st.uncolored = 0;
}

}  // namespace detail

struct RoundingTrace {
  std::size_t blocks = 0;
  int colors_reserved = 0;
};

/// Randomized geometric rounding. Block j samples one column for k'_j with
/// probability ρ z (nothing with the leftover mass), shuffles its color
/// classes over floor(γ k'_j) fresh colors and colors the vertices not colored
/// before. Blocks repeat at k = n until every vertex is colored.
inline Coloring msc_round(const WeightedGraph& g, const ConfigLpSolution& sol, const GeometricSchedule& sched, Rng& rng,
                          RoundingTrace* trace = nullptr, std::size_t max_blocks = 100000) {
  sol.validate(g);
  check_growth_factor(sched.c, sol.rho);
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> by_k(n + 1);
  for (std::size_t i = 0; i < sol.columns.size(); ++i)
    if (sol.columns[i].z > 0.0) by_k[sol.columns[i].k].push_back(i);

  detail::RoundState st{std::vector<int>(n, 0), n};
  int base = 0;
  std::size_t blocks = 0;
  for (int j = 0; st.uncolored > 0; ++j) {
    if (++blocks > max_blocks) throw InvariantViolation("rounding did not cover every vertex");
    const int kp = sched.capped(j, n);
    const int width = color_budget(sol.gamma, kp);
    double u = uniform01(rng), acc = 0.0;
    const ConfigColumn* pick = nullptr;
    for (std::size_t i : by_k[kp]) {
      acc += sol.rho * sol.columns[i].z;
      if (u < acc) {
        pick = &sol.columns[i];
        break;
      }
    }
    std::vector<int> perm(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) perm[i] = i + 1;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    if (pick) {
      for (std::size_t i = 0; i < pick->vertices.size(); ++i) {
        Vertex v = pick->vertices[i];
        if (st.color[v] != 0) continue;
        st.color[v] = base + perm[pick->witness[i] - 1];
        --st.uncolored;
      }
    }
    base += width;
  }
  if (trace) {
    trace->blocks = blocks;
    trace->colors_reserved = base;
  }
  return Coloring::of(g, std::move(st.color));
}

/// Offsets h in [1, c) at which some floor(h c^j) changes for j up to
/// ceil(log_c n), with the midpoints between consecutive ones.
inline std::vector<double> candidate_offsets(std::size_t n, double c) {
  std::vector<double> crit{1.0};
  const int jmax = n <= 1 ? 0 : static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / std::log(c)));
  for (std::size_t k = 1; k <= n; ++k)
    for (int j = 0; j <= jmax; ++j) {
      double h = static_cast<double>(k) / std::pow(c, j);
      if (h >= 1.0 && h < c) crit.push_back(h);
    }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end(), [](double a, double b) { return b - a <= 1e-12 * b; }), crit.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    out.push_back(crit[i]);
    double next = i + 1 < crit.size() ? crit[i + 1] : c;
    out.push_back(0.5 * (crit[i] + next));
  }
  return out;
}

struct DerandomizedRounding {
  Coloring coloring;
  double offset = 1.0;
  std::size_t offsets_tried = 0;
};

namespace detail {

struct ClassPlan {
  std::vector<std::vector<Vertex>> classes;  // uncolored part, heaviest first
  double newly_weight = 0.0;
  double charged = 0.0;  // Σ w · color for the newly colored
  std::size_t newly = 0;
};

inline ClassPlan plan_classes(const WeightedGraph& g, const std::vector<Vertex>& vertices,
                              const std::vector<int>& witness, const std::vector<int>& color, int base) {
  int top = 0;
  for (int c : witness) top = std::max(top, c);
  std::vector<std::vector<Vertex>> cls(static_cast<std::size_t>(top));
  std::vector<double> weight(static_cast<std::size_t>(top), 0.0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vertex v = vertices[i];
    if (color[v] != 0) continue;
    cls[witness[i] - 1].push_back(v);
    weight[witness[i] - 1] += g.weight(v);
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (!cls[i].empty()) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return weight[a] > weight[b]; });
  ClassPlan plan;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    plan.charged += weight[idx[r]] * (base + static_cast<int>(r) + 1);
    plan.newly_weight += weight[idx[r]];
    plan.newly += cls[idx[r]].size();
    plan.classes.push_back(std::move(cls[idx[r]]));
  }
  return plan;
}

// One deterministic pass for a fixed offset: per block pick the pool column
// minimizing (charge for newly colored) + (remaining weight) * (next free color).
inline Coloring greedy_block_rounding(const WeightedGraph& g, const PerfectEliminationOrder& peo,
                                      const ConfigLpSolution& sol, const GeometricSchedule& sched,
                                      const std::vector<std::vector<std::size_t>>& by_k) {
  const std::size_t n = g.size();
  RoundState st{std::vector<int>(n, 0), n};
  double remaining = g.total_weight();
  int base = 0;
  for (int j = 0; st.uncolored > 0; ++j) {
    const int kp = sched.capped(j, n);
    const int width = color_budget(sol.gamma, kp);
    const ConfigColumn* pick = nullptr;
    ClassPlan best;
    double best_score = 0.0;
    for (std::size_t i : by_k[kp]) {
      const ConfigColumn& col = sol.columns[i];
      ClassPlan plan = plan_classes(g, col.vertices, col.witness, st.color, base);
      if (plan.newly == 0) continue;
      double score = plan.charged + (remaining - plan.newly_weight) * (base + width + 1);
      bool better = !pick || score < best_score - 1e-12 * (1.0 + std::abs(best_score));
      if (!better && pick && std::abs(score - best_score) <= 1e-12 * (1.0 + std::abs(best_score))) {
        if (plan.newly != best.newly) better = plan.newly > best.newly;
        else if (col.z != pick->z) better = col.z > pick->z;
        else better = col.vertices < pick->vertices;
      }
      if (better) {
        pick = &col;
        best = std::move(plan);
        best_score = score;
      }
    }
    if (!pick) {
      if (kp == static_cast<int>(n)) {
        detail::finish_greedily(g, peo, st, base);
        break;
      }
      continue;
    }
    for (std::size_t r = 0; r < best.classes.size(); ++r)
      for (Vertex v : best.classes[r]) {
        st.color[v] = base + static_cast<int>(r) + 1;
        --st.uncolored;
      }
    remaining -= best.newly_weight;
    base += width;
  }
  return Coloring::of(g, compact_colors(std::move(st.color)));
}

}  // namespace detail

/// Deterministic rounding: every candidate offset (one per distinct cap
/// sequence), greedy column choice per block, classes heaviest first, unused
/// colors squeezed out. Keeps the cheapest result, smallest offset on ties.
inline DerandomizedRounding msc_round_derandomized(const WeightedGraph& g, const PerfectEliminationOrder& peo,
                                                   const ConfigLpSolution& sol, double c) {
  sol.validate(g);
  check_growth_factor(c, sol.rho);
  const std::size_t n = g.size();
  if (n == 0) return {Coloring::of(g, {}), 1.0, 0};
  std::vector<std::vector<std::size_t>> by_k(n + 1);
  for (std::size_t i = 0; i < sol.columns.size(); ++i)
    if (sol.columns[i].z > 1e-9) by_k[sol.columns[i].k].push_back(i);

  std::set<std::vector<int>> seen;
  std::optional<DerandomizedRounding> best;
  std::size_t tried = 0;
  for (double h : candidate_offsets(n, c)) {
    GeometricSchedule sched = GeometricSchedule::from_offset(c, h);
    if (!seen.insert(sched.caps(n)).second) continue;
    ++tried;
    Coloring col = detail::greedy_block_rounding(g, peo, sol, sched, by_k);
    if (!best || col.objective() < best->coloring.objective()) best = DerandomizedRounding{std::move(col), h, 0};
  }
  best->offsets_tried = tried;
  return *best;
}

/// Approximation ratio ρ γ (c+1) / (2 (1 - (1-ρ) c) ln c) of the geometric rounding.
inline double ratio_bound(double rho, double gamma, double c) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be at least 1");
  check_growth_factor(c, rho);
  return rho * gamma * (c + 1.0) / (2.0 * (1.0 - (1.0 - rho) * c) * std::log(c));
}

struct OptimalGrowth {
  double c;
  double ratio;
};

/// Minimizes ratio_bound over c by bisection on the sign of d/dc log ratio.
inline OptimalGrowth optimal_c(double rho, double gamma) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]: no growth factor exceeds 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be at least 1");
  const double upper = rho >= 1.0 ? std::exp(2.0) : std::min(std::exp(2.0), 1.0 / (1.0 - rho));
  auto slope = [&](double c) {
    return 1.0 / (c + 1.0) + (1.0 - rho) / (1.0 - (1.0 - rho) * c) - 1.0 / (c * std::log(c));
  };
  double lo = 1.0, hi = upper;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  double c = 0.5 * (lo + hi);
  return {c, ratio_bound(rho, gamma, c)};
}

struct SigmaCheck {
  double empirical;
  double closed_form;
};

/// Monte Carlo mean of σ(k), the first breakpoint h c^j at or above k, over
/// uniform Γ, against (c-1)/ln c · k.
inline SigmaCheck sigma_expectation_check(double c, double k, std::size_t samples, std::uint64_t seed = 0) {
  if (!(c > 1.0 && c < std::exp(2.0))) throw std::invalid_argument("c must lie in (1, e^2)");
  if (!(k >= 1.0)) throw std::invalid_argument("k must be at least 1");
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  Rng rng(seed);
  const double lc = std::log(c);
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double h = std::exp(uniform01(rng) * lc);
    double j = std::ceil((std::log(k) - std::log(h)) / lc);
    double sigma = h * std::exp(std::max(0.0, j) * lc);
    if (sigma < k) sigma *= c;  // rounding guard near exact powers
    sum += sigma;
  }
  return {sum / static_cast<double>(samples), (c - 1.0) / lc * k};
}

struct MscApproxResult {
  Coloring coloring;
  double lp_cost = 0.0;
  double c = 0.0;
  double rho = 1.0;
  double epsilon_prime = 0.0;
  double offset = 1.0;
  std::size_t iterations = 0;
  std::size_t columns_generated = 0;
};

/// Pricing accuracy used by msc_approx for a requested ε: ε' is halved
/// until the optimal ratio at ρ = 1 - ε' is within ε of the ρ = 1 ratio and
/// c* < 1/ε'. ρ is 1 when every budget below ω falls in the exact range.
struct MscPlan {
  double epsilon_prime = 0.0;
  double rho = 1.0;
  double c = 0.0;
};

inline MscPlan plan_msc(const PerfectEliminationOrder& peo, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double target = optimal_c(1.0, 1.0).ratio + epsilon;
  double eps = epsilon;
  while (true) {
    OptimalGrowth og = optimal_c(1.0 - eps, 1.0);
    if (og.ratio <= target && og.c < 1.0 / eps) break;
    eps *= 0.5;
  }
  const std::size_t omega = peo.clique_number();
  const bool exact = omega <= 1 || static_cast<double>(omega - 1) <= 8.0 / (eps * eps * eps);
  MscPlan plan;
  plan.epsilon_prime = eps;
  plan.rho = exact ? 1.0 : 1.0 - eps;
  plan.c = optimal_c(plan.rho, 1.0).c;
  return plan;
}

/// Full pipeline: PTAS pricing oracle, column generation, derandomized
/// rounding with the growth factor minimizing the ratio.
inline MscApproxResult msc_approx(const WeightedGraph& g, double epsilon, const ConfigLpOptions& options = {},
                                  std::optional<double> c_override = std::nullopt,
                                  ConfigLpSolution* lp_out = nullptr) {
  PerfectEliminationOrder peo = require_chordal(g);
  MscPlan plan = plan_msc(peo, epsilon);
  ConfigLpSolution sol = solve_config_lp(g, peo, ptas_mkcs_oracle(g, peo, plan.epsilon_prime), plan.rho, 1.0, options);
  const double c = c_override ? *c_override : plan.c;
  DerandomizedRounding r = msc_round_derandomized(g, peo, sol, c);
  MscApproxResult out{std::move(r.coloring), sol.cost, c, plan.rho, plan.epsilon_prime, r.offset, sol.iterations,
                      sol.columns_generated};
  if (lp_out) *lp_out = std::move(sol);
  return out;
}

/// Color t goes to a maximum-weight independent set of the uncolored vertices
/// (extended by zero-weight vertices until maximal).
inline Coloring greedy_msc_4approx(const WeightedGraph& g, const PerfectEliminationOrder& peo) {
  const std::size_t n = g.size();
  std::vector<int> color(n, 0);
  std::vector<double> residual = g.weights();
  std::size_t left = n;
  for (int t = 1; left > 0; ++t) {
    std::vector<Vertex> set = max_weight_independent_set(g.reweighted(residual), peo);
    std::vector<char> blocked(n, 0);
    for (Vertex v : set)
      for (Vertex u : g.neighbors(v)) blocked[u] = 1;
    for (Vertex v : peo.order())
      if (color[v] == 0 && !blocked[v] && !std::binary_search(set.begin(), set.end(), v)) {
        set.push_back(v);
        for (Vertex u : g.neighbors(v)) blocked[u] = 1;
      }
    for (Vertex v : set) {
      color[v] = t;
      residual[v] = 0.0;
      --left;
    }
  }
  return Coloring::of(g, std::move(color));
}

/// Literature-style stand-in: over the same geometric schedule, block j takes
/// the greedy max-coverage k'_j-colorable set of the whole graph and colors
/// its uncolored part, heaviest class first. Best over candidate offsets.
inline Coloring coverage_concat_msc(const WeightedGraph& g, const PerfectEliminationOrder& peo, double c) {
  if (!(c > 1.0)) throw std::invalid_argument("growth factor c must exceed 1");
  const std::size_t n = g.size();
  if (n == 0) return Coloring::of(g, {});
  std::vector<std::optional<MkcsResult>> cover(n + 1);
  std::set<std::vector<int>> seen;
  std::optional<Coloring> best;
  for (double h : candidate_offsets(n, c)) {
    GeometricSchedule sched = GeometricSchedule::from_offset(c, h);
    std::vector<int> caps = sched.caps(n);
    if (!seen.insert(caps).second) continue;
    detail::RoundState st{std::vector<int>(n, 0), n};
    int base = 0;
    for (int kp : caps) {
      if (!cover[kp]) cover[kp] = greedy_max_coverage_mkcs(g, peo, kp);
      detail::ClassPlan plan = detail::plan_classes(g, cover[kp]->selected, cover[kp]->witness, st.color, base);
      for (std::size_t r = 0; r < plan.classes.size(); ++r)
        for (Vertex v : plan.classes[r]) {
          st.color[v] = base + static_cast<int>(r) + 1;
          --st.uncolored;
        }
      base += kp;
      if (st.uncolored == 0) break;
    }
    detail::finish_greedily(g, peo, st, base);
    Coloring col = Coloring::of(g, compact_colors(std::move(st.color)));
    if (!best || col.objective() < best->objective()) best = std::move(col);
  }
  return *best;
}

}  // namespace chordsum
