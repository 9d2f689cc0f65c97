#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordsum/graph.hpp"
#include "chordsum/lp/simplex.hpp"
#include "chordsum/mkcs_result.hpp"

// Exhaustive reference solvers for small instances. Nothing here relies on
// chordality, so these check the chordal fast paths independently.
namespace chordsum::oracle {

struct OracleBudget {
  std::size_t max_mkcs_vertices = 12;
  std::size_t max_msc_vertices = 10;
  double time_limit_seconds = 60.0;
};

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using Mask = std::uint64_t;

class Deadline {
public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}
  void check() {
    if ((++ticks_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > end_)
      throw BudgetExceeded("oracle time limit exceeded");
  }

private:
  std::chrono::steady_clock::time_point end_;
  std::size_t ticks_ = 0;
};

inline void require_size(const WeightedGraph& g, std::size_t limit, const char* what) {
  if (g.size() > limit || g.size() > 63)
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(g.size()) + " vertices exceeds budget of " +
                         std::to_string(std::min<std::size_t>(limit, 63)));
}

inline std::vector<Mask> adjacency_masks(const WeightedGraph& g) {
  std::vector<Mask> adj(g.size(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

// Backtracking k-coloring of the vertices in `mask`. A greedily grown clique
// is fixed to colors 1..|Q| first, which removes color-permutation symmetry.
class KColorSearch {
public:
  KColorSearch(const std::vector<Mask>& adj, Deadline& deadline) : adj_(adj), deadline_(deadline) {}

  std::optional<std::vector<int>> run(Mask mask, int k) {
    colors_.assign(adj_.size(), 0);
    order_.clear();
    k_ = k;
    if (mask == 0) return colors_;
    if (k <= 0) return std::nullopt;

    std::vector<int> verts;
    for (int v = 0; v < static_cast<int>(adj_.size()); ++v)
      if (mask >> v & 1) verts.push_back(v);
    auto deg = [&](int v) { return std::popcount(adj_[v] & mask); };
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) { return deg(a) > deg(b); });

    Mask clique = 0;
    for (int v : verts)
      if ((adj_[v] & clique) == clique) clique |= Mask{1} << v;
    if (std::popcount(clique) > k) return std::nullopt;
    int c = 0;
    for (int v : verts)
      if (clique >> v & 1) colors_[v] = ++c;
    used_ = c;
    for (int v : verts)
      if (!(clique >> v & 1)) order_.push_back(v);
    if (!extend(0)) return std::nullopt;
    return colors_;
  }

private:
  bool extend(std::size_t i) {
    deadline_.check();
    if (i == order_.size()) return true;
    int v = order_[i];
    Mask forbidden = 0;
    for (Mask nb = adj_[v]; nb; nb &= nb - 1) {
      int u = std::countr_zero(nb);
      if (colors_[u]) forbidden |= Mask{1} << colors_[u];
    }
    int limit = std::min(k_, used_ + 1);
    for (int c = 1; c <= limit; ++c) {
      if (forbidden >> c & 1) continue;
      colors_[v] = c;
      int saved = used_;
      used_ = std::max(used_, c);
      if (extend(i + 1)) return true;
      used_ = saved;
    }
    colors_[v] = 0;
    return false;
  }

  const std::vector<Mask>& adj_;
  Deadline& deadline_;
  std::vector<int> colors_;
  std::vector<int> order_;
  int k_ = 0;
  int used_ = 0;
};

}  // namespace detail

/// A proper coloring with colors in 1..k, or nullopt if none exists.
inline std::optional<std::vector<int>> k_coloring(const WeightedGraph& g, int k, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_mkcs_vertices, "k-colorability oracle");
  detail::Deadline deadline(budget.time_limit_seconds);
  auto adj = detail::adjacency_masks(g);
  detail::KColorSearch search(adj, deadline);
  detail::Mask all = g.size() == 0 ? 0 : (~detail::Mask{0} >> (64 - g.size()));
  return search.run(all, k);
}

inline bool is_k_colorable(const WeightedGraph& g, int k, const OracleBudget& budget = {}) {
  return k_coloring(g, k, budget).has_value();
}

/// Maximum-weight S with G[S] k-colorable, by enumerating all subsets. Ties
/// go to the subset with the smallest bitmask.
inline MkcsResult brute_mkcs(const WeightedGraph& g, int k, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_mkcs_vertices, "MkCS oracle");
  if (k < 1) throw std::invalid_argument("k must be positive");
  detail::Deadline deadline(budget.time_limit_seconds);
  auto adj = detail::adjacency_masks(g);
  detail::KColorSearch search(adj, deadline);
  const std::size_t n = g.size();
  const detail::Mask total = detail::Mask{1} << n;

  detail::Mask best = 0;
  double best_weight = 0.0;
  std::vector<int> best_colors(n, 0);
  for (detail::Mask mask = 1; mask < total; ++mask) {
    double w = 0.0;
    for (detail::Mask m = mask; m; m &= m - 1) w += g.weight(std::countr_zero(m));
    if (w <= best_weight) continue;
    if (auto col = search.run(mask, k)) {
      best = mask;
      best_weight = w;
      best_colors = *col;
    }
  }
  std::vector<Vertex> sel;
  std::vector<int> wit;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
    if (best >> v & 1) {
      sel.push_back(v);
      wit.push_back(best_colors[v]);
    }
  return MkcsResult::of(g, std::move(sel), std::move(wit), k);
}

namespace detail {

class SumColorSearch {
public:
  SumColorSearch(const WeightedGraph& g, Deadline& deadline) : g_(g), deadline_(deadline) {
    order_.resize(g.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    suffix_weight_.assign(g.size() + 1, 0.0);
    for (std::size_t i = g.size(); i-- > 0;) suffix_weight_[i] = suffix_weight_[i + 1] + g.weight(order_[i]);
    colors_.assign(g.size(), 0);
  }

  std::vector<int> run() {
    // First-fit in search order seeds the incumbent.
    for (int v : order_) {
      std::vector<char> taken(g_.size() + 2, 0);
      for (Vertex u : g_.neighbors(v)) taken[colors_[u]] = 1;
      int c = 1;
      while (taken[c]) ++c;
      colors_[v] = c;
    }
    best_ = colors_;
    best_cost_ = 0.0;
    for (Vertex v = 0; v < static_cast<Vertex>(g_.size()); ++v) best_cost_ += g_.weight(v) * colors_[v];
    std::fill(colors_.begin(), colors_.end(), 0);
    search(0, 0.0);
    return best_;
  }

private:
  void search(std::size_t i, double partial) {
    deadline_.check();
    if (partial + suffix_weight_[i] >= best_cost_) return;
    if (i == order_.size()) {
      best_cost_ = partial;
      best_ = colors_;
      return;
    }
    int v = order_[i];
    // Lowering any vertex to its smallest free color never costs more, so some
    // optimum has every vertex colored c adjacent to all of 1..c-1: c <= deg+1.
    const int limit = static_cast<int>(g_.degree(v)) + 1;
    for (int c = 1; c <= limit; ++c) {
      bool ok = true;
      for (Vertex u : g_.neighbors(v))
        if (colors_[u] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      colors_[v] = c;
      search(i + 1, partial + g_.weight(v) * c);
    }
    colors_[v] = 0;
  }

  const WeightedGraph& g_;
  Deadline& deadline_;
  std::vector<int> order_;
  std::vector<double> suffix_weight_;
  std::vector<int> colors_;
  std::vector<int> best_;
  double best_cost_ = 0.0;
};

}  // namespace detail

/// Minimum weighted sum coloring by branch and bound.
inline Coloring brute_msc(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_msc_vertices, "MSC oracle");
  detail::Deadline deadline(budget.time_limit_seconds);
  detail::SumColorSearch search(g, deadline);
  return Coloring::of(g, search.run());
}

/// True iff no vertex subset induces a cycle of length >= 4.
inline bool brute_is_chordal(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_mkcs_vertices, "chordality oracle");
  auto adj = detail::adjacency_masks(g);
  const detail::Mask total = detail::Mask{1} << g.size();
  for (detail::Mask mask = 1; mask < total; ++mask) {
    if (std::popcount(mask) < 4) continue;
    bool two_regular = true;
    for (detail::Mask m = mask; m && two_regular; m &= m - 1)
      two_regular = std::popcount(adj[std::countr_zero(m)] & mask) == 2;
    if (!two_regular) continue;
    // Connected 2-regular = a single cycle.
    detail::Mask seen = mask & (~mask + 1), frontier = seen;
    while (frontier) {
      detail::Mask next = 0;
      for (detail::Mask m = frontier; m; m &= m - 1) next |= adj[std::countr_zero(m)] & mask;
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen == mask) return false;
  }
  return true;
}

/// Weight of a maximum-weight independent set, by enumeration.
inline double brute_mwis_weight(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_mkcs_vertices, "independent set oracle");
  auto adj = detail::adjacency_masks(g);
  const detail::Mask total = detail::Mask{1} << g.size();
  double best = 0.0;
  for (detail::Mask mask = 1; mask < total; ++mask) {
    bool independent = true;
    double w = 0.0;
    for (detail::Mask m = mask; m && independent; m &= m - 1) {
      int v = std::countr_zero(m);
      independent = (adj[v] & mask) == 0;
      w += g.weight(v);
    }
    if (independent) best = std::max(best, w);
  }
  return best;
}

inline std::size_t brute_clique_number(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::require_size(g, budget.max_mkcs_vertices, "clique oracle");
  auto adj = detail::adjacency_masks(g);
  const detail::Mask total = detail::Mask{1} << g.size();
  std::size_t best = 0;
  for (detail::Mask mask = 1; mask < total; ++mask) {
    bool clique = true;
    for (detail::Mask m = mask; m && clique; m &= m - 1) {
      int v = std::countr_zero(m);
      clique = (adj[v] | (detail::Mask{1} << v)) == (adj[v] | mask);
    }
    if (clique) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

/// Optimum of the configuration LP with every k-colorable subset enumerated
/// as a column, for k = 1..n.
struct FullConfigLp {
  double cost = 0.0;
  std::size_t columns = 0;
  lp::LpSolution solution;
};

inline FullConfigLp full_config_lp(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::require_size(g, std::min<std::size_t>(budget.max_mkcs_vertices, 8), "full configuration LP");
  const int n = static_cast<int>(g.size());
  FullConfigLp out;
  if (n == 0) return out;
  lp::LinearProgram prog(lp::Sense::minimize);
  // x[v][k-1]
  std::vector<std::vector<int>> x(n, std::vector<int>(n));
  for (int v = 0; v < n; ++v)
    for (int k = 1; k <= n; ++k) x[v][k - 1] = prog.add_variable(g.weight(v) * k);
  for (int v = 0; v < n; ++v) {
    std::vector<lp::Term> t;
    for (int k = 1; k <= n; ++k) t.push_back({x[v][k - 1], 1.0});
    prog.add_constraint(std::move(t), lp::Relation::equal, 1.0);
  }
  std::vector<int> cap_row(n), cover_row(n * n);
  for (int k = 1; k <= n; ++k) cap_row[k - 1] = prog.add_constraint({}, lp::Relation::less_equal, 1.0);
  for (int v = 0; v < n; ++v)
    for (int k = 1; k <= n; ++k) {
      std::vector<lp::Term> t;
      for (int kk = 1; kk <= k; ++kk) t.push_back({x[v][kk - 1], -1.0});
      cover_row[v * n + (k - 1)] = prog.add_constraint(std::move(t), lp::Relation::greater_equal, 0.0);
    }
  detail::Deadline deadline(budget.time_limit_seconds);
  auto adj = detail::adjacency_masks(g);
  detail::KColorSearch search(adj, deadline);
  const detail::Mask total = detail::Mask{1} << n;
  for (int k = 1; k <= n; ++k)
    for (detail::Mask mask = 1; mask < total; ++mask) {
      if (!search.run(mask, k)) continue;
      lp::Column col;
      col.entries.push_back({cap_row[k - 1], 1.0});
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) col.entries.push_back({cover_row[v * n + (k - 1)], 1.0});
      prog.add_column(col);
      ++out.columns;
    }
  out.solution = lp::solve(prog);
  if (!out.solution.optimal())
    throw lp::SolveError(out.solution.status, "full configuration LP did not solve to optimality");
  out.cost = out.solution.objective;
  return out;
}

}  // namespace chordsum::oracle
