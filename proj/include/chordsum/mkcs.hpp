#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordsum/chordal.hpp"
#include "chordsum/clique_tree.hpp"
#include "chordsum/graph.hpp"
#include "chordsum/lp/simplex.hpp"
#include "chordsum/mkcs_result.hpp"
#include "chordsum/random.hpp"

// Maximum k-colorable subgraph on chordal graphs.
namespace chordsum {

struct KColorLpSolution {
  std::vector<double> x;
  int k = 0;
  double objective = 0.0;
};

/// max Σ w_v x_v  s.t.  x_v + x(N^left(v)) <= k,  0 <= x <= 1.
/// Rows with |N^left(v)| < k are implied by the bounds and left out.
inline lp::LinearProgram kcolor_lp(const WeightedGraph& g, const PerfectEliminationOrder& peo, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  lp::LinearProgram prog(lp::Sense::maximize);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    prog.add_variable(g.weight(v), 0.0, 1.0, "x" + std::to_string(v));
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
    auto left = peo.left(v);
    if (left.size() < static_cast<std::size_t>(k)) continue;
    std::vector<lp::Term> terms{{v, 1.0}};
    for (Vertex u : left) terms.push_back({u, 1.0});
    prog.add_constraint(std::move(terms), lp::Relation::less_equal, k, "left" + std::to_string(v));
  }
  return prog;
}

inline KColorLpSolution solve_kcolor_lp(const WeightedGraph& g, const PerfectEliminationOrder& peo, int k,
                                        lp::SimplexOptions options = {}) {
  lp::LpSolution sol = lp::solve(kcolor_lp(g, peo, k), options);
  if (!sol.optimal()) throw lp::SolveError(sol.status, std::string("K-color LP ended ") + lp::to_string(sol.status));
  KColorLpSolution out;
  out.k = k;
  out.x = std::move(sol.primal);
  for (auto& xv : out.x) xv = std::clamp(xv, 0.0, 1.0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) out.objective += g.weight(v) * out.x[v];
  return out;
}

namespace detail {

// Keeps each candidate, in PEO order, whose already-kept left neighbors number
// at most k-1; colors it with the smallest color free among them.
inline MkcsResult sweep_select(const WeightedGraph& g, const PerfectEliminationOrder& peo, int k,
                               const std::vector<char>& candidate) {
  const std::size_t n = g.size();
  std::vector<int> color(n, 0);
  std::vector<std::size_t> taken(static_cast<std::size_t>(k) + 2, static_cast<std::size_t>(-1));
  std::vector<Vertex> selected;
  std::vector<int> witness;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = peo.at(i);
    if (!candidate[v]) continue;
    int in_s = 0;
    for (Vertex u : peo.left(v))
      if (color[u] > 0) ++in_s;
    if (in_s > k - 1) continue;
    for (Vertex u : peo.left(v))
      if (color[u] > 0) taken[color[u]] = i;
    int c = 1;
    while (taken[c] == i) ++c;
    color[v] = c;
    selected.push_back(v);
    witness.push_back(c);
  }
  return MkcsResult::of(g, std::move(selected), std::move(witness), k);
}

inline double sweep_weight(const WeightedGraph& g, const PerfectEliminationOrder& peo, int k,
                           const std::vector<char>& candidate, std::vector<char>& kept) {
  std::fill(kept.begin(), kept.end(), 0);
  double w = 0.0;
  for (Vertex v : peo.order()) {
    if (!candidate[v]) continue;
    int in_s = 0;
    for (Vertex u : peo.left(v)) in_s += kept[u];
    if (in_s > k - 1) continue;
    kept[v] = 1;
    w += g.weight(v);
  }
  return w;
}

inline void check_lp_shape(const WeightedGraph& g, const KColorLpSolution& lp, int k) {
  if (lp.x.size() != g.size()) throw std::invalid_argument("LP solution size does not match the graph");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

}  // namespace detail

/// Samples each v with probability (1-f) x_v, then sweeps in PEO order.
inline MkcsResult round_mkcs(const WeightedGraph& g, const PerfectEliminationOrder& peo, const KColorLpSolution& lp,
                             int k, double f, Rng& rng) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("damping f must lie in [0, 1]");
  detail::check_lp_shape(g, lp, k);
  std::vector<char> sampled(g.size(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) sampled[v] = uniform01(rng) < (1.0 - f) * lp.x[v];
  return detail::sweep_select(g, peo, k, sampled);
}

inline double default_damping(int k) { return std::cbrt(1.0 / k); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime(std::uint64_t at_least) {
  std::uint64_t p = std::max<std::uint64_t>(at_least, 2);
  while (!is_prime(p)) ++p;
  return p;
}

/// Pairwise-independent indicator family over GF(p): seed (a, b) puts vertex
/// v in the sample iff (a v + b) mod p < threshold[v]. For u != v the pair
/// (h_u, h_v) is uniform on GF(p)^2 over all p^2 seeds.
class PairwiseSampleSpace {
public:
  /// Probabilities are rounded down to multiples of 1/p.
  PairwiseSampleSpace(std::size_t n, const std::vector<double>& probability, double quantization = 1.0 / 64) {
    if (probability.size() != n) throw std::invalid_argument("one probability per vertex required");
    if (!(quantization > 0.0 && quantization <= 1.0)) throw std::invalid_argument("quantization must lie in (0, 1]");
    p_ = next_prime(std::max<std::uint64_t>(n, static_cast<std::uint64_t>(std::ceil(1.0 / quantization))));
    threshold_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      double q = std::clamp(probability[v], 0.0, 1.0);
      threshold_[v] = static_cast<std::uint64_t>(std::floor(q * static_cast<double>(p_)));
    }
  }

  std::uint64_t prime() const { return p_; }
  std::uint64_t seed_count() const { return p_ * p_; }
  std::size_t size() const { return threshold_.size(); }
  std::uint64_t threshold(std::size_t v) const { return threshold_[v]; }
  double probability(std::size_t v) const { return static_cast<double>(threshold_[v]) / static_cast<double>(p_); }

  std::uint64_t hash(std::uint64_t seed, std::size_t v) const {
    std::uint64_t a = seed / p_, b = seed % p_;
    return (a * (v % p_) + b) % p_;
  }

  bool member(std::uint64_t seed, std::size_t v) const { return hash(seed, v) < threshold_[v]; }

  void sample(std::uint64_t seed, std::vector<char>& out) const {
    out.resize(threshold_.size());
    for (std::size_t v = 0; v < threshold_.size(); ++v) out[v] = member(seed, v);
  }

private:
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> threshold_;
};

struct DerandomizedMkcs {
  MkcsResult result;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
};

/// Tries every seed of the pairwise space with f = k^{-1/3} and keeps the
/// heaviest outcome (smallest seed on ties).
inline DerandomizedMkcs round_mkcs_derandomized_detailed(const WeightedGraph& g, const PerfectEliminationOrder& peo,
                                                         const KColorLpSolution& lp, int k,
                                                         double quantization = 1.0 / 64) {
  detail::check_lp_shape(g, lp, k);
  const double f = default_damping(k);
  std::vector<double> prob(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) prob[v] = (1.0 - f) * lp.x[v];
  PairwiseSampleSpace space(g.size(), prob, quantization);
  std::vector<char> sampled, kept(g.size(), 0), best_sample(g.size(), 0);
  double best = -1.0;
  std::uint64_t best_seed = 0;
  for (std::uint64_t s = 0; s < space.seed_count(); ++s) {
    space.sample(s, sampled);
    double w = detail::sweep_weight(g, peo, k, sampled, kept);
    if (w > best) {
      best = w;
      best_seed = s;
      best_sample = sampled;
    }
  }
  return {detail::sweep_select(g, peo, k, best_sample), best_seed, space.prime()};
}

inline MkcsResult round_mkcs_derandomized(const WeightedGraph& g, const PerfectEliminationOrder& peo,
                                          const KColorLpSolution& lp, int k, double quantization = 1.0 / 64) {
  return round_mkcs_derandomized_detailed(g, peo, lp, k, quantization).result;
}

/// Size guards for the exact dynamic program. The table at a node holds every
/// subset of its bag of size at most k, so the real cost is governed by
/// max_states; max_k and max_n are coarse caps on top.
struct DpLimits {
  int max_k = 8;
  std::size_t max_n = 60;
  std::size_t max_states = std::size_t{1} << 20;
};

class DpTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double binomial_sum(std::size_t b, std::size_t k) {
  double total = 0.0, term = 1.0;
  for (std::size_t i = 0; i <= std::min(b, k); ++i) {
    total += term;
    term = term * static_cast<double>(b - i) / static_cast<double>(i + 1);
  }
  return total;
}

// All masks over b bits with popcount <= k, in increasing popcount.
inline std::vector<std::uint64_t> small_subsets(std::size_t b, std::size_t k) {
  std::vector<std::uint64_t> out{0};
  for (std::size_t s = 1; s <= std::min(b, k); ++s) {
    std::uint64_t m = (std::uint64_t{1} << s) - 1;
    const std::uint64_t end = b == 64 ? 0 : (std::uint64_t{1} << b);
    while (m < end || (b == 64 && m != 0)) {
      out.push_back(m);
      std::uint64_t c = m & (~m + 1), r = m + c;
      if (r == 0) break;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  return out;
}

// Bits of `mask` (over `from`) that name vertices of `onto`, re-expressed as a
// mask over `onto`.
inline std::uint64_t project(std::uint64_t mask, const std::vector<int>& position_in_onto) {
  std::uint64_t out = 0;
  while (mask) {
    int i = std::countr_zero(mask);
    mask &= mask - 1;
    if (position_in_onto[i] >= 0) out |= std::uint64_t{1} << position_in_onto[i];
  }
  return out;
}

// Colors the selected vertices root-down: each gets the smallest color unused
// by selected vertices in the bag where its subtree starts. Adjacent vertices
// meet in the deeper of their two top nodes, so the result is proper, and it
// needs at most the largest selected bag many colors.
inline MkcsResult top_down_witness(const WeightedGraph& g, const CliqueTreeRepresentation& rep,
                                   const std::vector<int>& order, const std::vector<char>& in_s, int k) {
  std::vector<int> color(g.size(), 0);
  std::vector<Vertex> selected;
  std::vector<int> witness;
  std::vector<char> used;
  for (int a : order) {
    const auto& bag = rep.bags[a];
    used.assign(bag.size() + 2, 0);
    for (Vertex v : bag)
      if (in_s[v] && color[v] > 0 && static_cast<std::size_t>(color[v]) < used.size()) used[color[v]] = 1;
    for (Vertex v : bag) {
      if (!in_s[v] || color[v] > 0) continue;
      int c = 1;
      while (used[c]) ++c;
      color[v] = c;
      used[c] = 1;
      selected.push_back(v);
      witness.push_back(c);
    }
  }
  return MkcsResult::of(g, std::move(selected), std::move(witness), k);
}

}  // namespace detail

/// Exact maximum-weight k-colorable subgraph of a chordal graph by dynamic
/// programming over its clique tree. A set is feasible iff no tree node lies
/// in more than k of its subtrees, so the state at a node is the selected part
/// of its bag.
inline MkcsResult exact_mkcs_dp(const WeightedGraph& g, const CliqueTreeRepresentation& rep, int k,
                                const DpLimits& limits = {}) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const std::size_t n = g.size();
  if (rep.subtrees.size() != n) throw std::invalid_argument("clique tree does not match the graph");
  const std::size_t nodes = rep.node_count();
  // Root at node 0; BFS order gives parents before children.
  std::vector<int> parent(nodes, -1), order;
  std::vector<int> depth(nodes, 0);
  if (nodes > 0) {
    std::vector<char> seen(nodes, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int b : rep.tree_adjacency[order[i]])
        if (!seen[b]) {
          seen[b] = 1;
          parent[b] = order[i];
          depth[b] = depth[order[i]] + 1;
          order.push_back(b);
        }
  }
  std::vector<int> top(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    for (int a : rep.subtrees[v])
      if (top[v] < 0 || depth[a] < depth[top[v]]) top[v] = a;

  if (static_cast<std::size_t>(k) >= rep.max_bag_size()) {
    // Every tree node already lies in at most k subtrees.
    std::vector<char> all(n, 1);
    return detail::top_down_witness(g, rep, order, all, k);
  }
  if (k > limits.max_k)
    throw DpTooLarge("k = " + std::to_string(k) + " exceeds the dynamic program cap of " + std::to_string(limits.max_k));
  if (n > limits.max_n)
    throw DpTooLarge(std::to_string(n) + " vertices exceed the dynamic program cap of " + std::to_string(limits.max_n));

  for (const auto& bag : rep.bags) {
    if (bag.size() > 63 || detail::binomial_sum(bag.size(), static_cast<std::size_t>(k)) >
                               static_cast<double>(limits.max_states))
      throw DpTooLarge("a clique of size " + std::to_string(bag.size()) + " gives too many states for k = " +
                       std::to_string(k));
  }

  struct Table {
    std::vector<std::uint64_t> states;
    std::vector<double> value;
    std::vector<std::vector<std::size_t>> child_choice;  // per state, per child
    std::vector<int> children;
    std::vector<int> shared_in_parent;  // bag position -> position in parent bag
  };
  std::vector<Table> table(nodes);
  std::vector<std::vector<int>> children(nodes);
  for (int a : order)
    if (parent[a] >= 0) children[parent[a]].push_back(a);

  auto positions = [&](int from, int onto) {
    std::vector<int> pos(rep.bags[from].size(), -1);
    const auto& target = rep.bags[onto];
    for (std::size_t i = 0; i < rep.bags[from].size(); ++i) {
      auto it = std::lower_bound(target.begin(), target.end(), rep.bags[from][i]);
      if (it != target.end() && *it == rep.bags[from][i]) pos[i] = static_cast<int>(it - target.begin());
    }
    return pos;
  };

  for (std::size_t idx = order.size(); idx-- > 0;) {
    const int a = order[idx];
    Table& t = table[a];
    const auto& bag = rep.bags[a];
    t.children = children[a];
    if (parent[a] >= 0) t.shared_in_parent = positions(a, parent[a]);
    t.states = detail::small_subsets(bag.size(), static_cast<std::size_t>(k));
    t.value.assign(t.states.size(), 0.0);
    t.child_choice.assign(t.states.size(), std::vector<std::size_t>(t.children.size(), 0));

    // Best child state per projection onto the shared part of both bags.
    std::vector<std::unordered_map<std::uint64_t, std::pair<double, std::size_t>>> best(t.children.size());
    std::vector<std::vector<int>> mine_in_child(t.children.size());
    for (std::size_t ci = 0; ci < t.children.size(); ++ci) {
      const int c = t.children[ci];
      const Table& ct = table[c];
      for (std::size_t s = 0; s < ct.states.size(); ++s) {
        std::uint64_t key = detail::project(ct.states[s], ct.shared_in_parent);
        auto [it, fresh] = best[ci].try_emplace(key, ct.value[s], s);
        if (!fresh && ct.value[s] > it->second.first) it->second = {ct.value[s], s};
      }
      mine_in_child[ci] = positions(a, c);
    }

    for (std::size_t s = 0; s < t.states.size(); ++s) {
      const std::uint64_t mask = t.states[s];
      double value = 0.0;
      for (std::uint64_t m = mask; m; m &= m - 1) {
        Vertex v = bag[std::countr_zero(m)];
        if (top[v] == a) value += g.weight(v);
      }
      bool ok = true;
      for (std::size_t ci = 0; ci < t.children.size() && ok; ++ci) {
        // The key is expressed over the parent's bag positions.
        std::uint64_t key = 0;
        for (std::uint64_t m = mask; m; m &= m - 1) {
          int i = std::countr_zero(m);
          if (mine_in_child[ci][i] >= 0) key |= std::uint64_t{1} << i;
        }
        auto it = best[ci].find(key);
        if (it == best[ci].end()) {
          ok = false;
          break;
        }
        value += it->second.first;
        t.child_choice[s][ci] = it->second.second;
      }
      t.value[s] = ok ? value : -std::numeric_limits<double>::infinity();
    }
  }

  std::vector<char> in_s(n, 0);
  if (nodes > 0) {
    const Table& root = table[0];
    std::size_t best_state = 0;
    for (std::size_t s = 1; s < root.states.size(); ++s)
      if (root.value[s] > root.value[best_state]) best_state = s;
    std::vector<std::size_t> chosen(nodes, 0);
    chosen[0] = best_state;
    for (int a : order) {
      const Table& t = table[a];
      for (std::size_t ci = 0; ci < t.children.size(); ++ci) chosen[t.children[ci]] = t.child_choice[chosen[a]][ci];
      for (std::uint64_t m = t.states[chosen[a]]; m; m &= m - 1) in_s[rep.bags[a][std::countr_zero(m)]] = 1;
    }
  }
  return detail::top_down_witness(g, rep, order, in_s, k);
}

/// (1-ε)-approximation: exact when k <= 8/ε³, else derandomized LP rounding.
/// Inside the exact range the DP is bounded by `limits.max_states` only.
inline MkcsResult mkcs_ptas(const WeightedGraph& g, int k, double epsilon, const DpLimits& limits = {}) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  PerfectEliminationOrder peo = require_chordal(g);
  if (static_cast<double>(k) <= 8.0 / (epsilon * epsilon * epsilon)) {
    DpLimits relaxed = limits;
    relaxed.max_k = std::max(relaxed.max_k, k);
    relaxed.max_n = std::numeric_limits<std::size_t>::max();
    return exact_mkcs_dp(g, build_clique_tree(g, peo), k, relaxed);
  }
  return round_mkcs_derandomized(g, peo, solve_kcolor_lp(g, peo, k), k);
}

/// k rounds, each taking a maximum-weight independent set among the vertices
/// not yet covered.
inline MkcsResult greedy_max_coverage_mkcs(const WeightedGraph& g, const PerfectEliminationOrder& peo, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<double> residual = g.weights();
  std::vector<Vertex> selected;
  std::vector<int> witness;
  for (int round = 1; round <= k; ++round) {
    auto set = max_weight_independent_set(g.reweighted(residual), peo);
    if (set.empty()) break;
    for (Vertex v : set) {
      selected.push_back(v);
      witness.push_back(round);
      residual[v] = 0.0;
    }
  }
  return MkcsResult::of(g, std::move(selected), std::move(witness), k);
}

}  // namespace chordsum
