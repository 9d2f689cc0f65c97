#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "chordsum/chordal.hpp"
#include "chordsum/gen.hpp"
#include "chordsum/graph.hpp"
#include "chordsum/random.hpp"

namespace testing_support {

using chordsum::Edge;
using chordsum::Rng;
using chordsum::Vertex;
using chordsum::WeightedGraph;

inline WeightedGraph make(std::size_t n, std::vector<Edge> edges, std::vector<double> weights = {}) {
  if (weights.empty()) weights.assign(n, 1.0);
  return WeightedGraph(n, edges, weights);
}

inline WeightedGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return make(n, e);
}

inline WeightedGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
  return make(n, e);
}

inline WeightedGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v < n; ++v) e.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n));
  return make(n, e);
}

inline WeightedGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v <= leaves; ++v) e.emplace_back(0, static_cast<Vertex>(v));
  return make(leaves + 1, e);
}

/// Arbitrary simple graph with edge probability p.
inline WeightedGraph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (chordsum::uniform01(rng) < p) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return make(n, e);
}

inline std::vector<double> integer_weights(Rng& rng, std::size_t n, int max_weight) {
  std::vector<double> w(n);
  for (auto& x : w) x = 1.0 + static_cast<double>(chordsum::uniform_below(rng, static_cast<std::uint64_t>(max_weight)));
  return w;
}

/// A chordal graph from one of the generator families with varied
/// parameters, on exactly n vertices.
inline WeightedGraph random_chordal(Rng& rng, std::size_t n, bool weighted, int max_weight = 10) {
  chordsum::gen::GenSpec s;
  s.n = n;
  s.seed = rng();
  s.weights = weighted ? chordsum::gen::WeightKind::uniform_int : chordsum::gen::WeightKind::unit;
  s.max_weight = max_weight;
  switch (chordsum::uniform_below(rng, 3)) {
    case 0:
      s.family = chordsum::gen::Family::ktree;
      s.param = static_cast<double>(chordsum::uniform_below(rng, std::min<std::size_t>(n, 4)));
      break;
    case 1:
      s.family = chordsum::gen::Family::interval;
      s.param = 0.15 + 0.85 * chordsum::uniform01(rng);
      break;
    default:
      s.family = chordsum::gen::Family::subtree;
      s.param = 1.0 + static_cast<double>(chordsum::uniform_below(rng, 4));
      break;
  }
  return chordsum::gen::generate(s);
}

namespace detail {

inline std::uint32_t edge_mask(const std::vector<std::vector<char>>& adj, const std::vector<int>& perm) {
  const std::size_t n = adj.size();
  std::uint32_t mask = 0;
  int bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (adj[perm[u]][perm[v]]) mask |= std::uint32_t{1} << bit;
  return mask;
}

inline std::uint32_t canonical(const std::vector<std::vector<char>>& adj) {
  std::vector<int> perm(adj.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = ~std::uint32_t{0};
  do best = std::min(best, edge_mask(adj, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::vector<char>> from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  int bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) adj[u][v] = adj[v][u] = 1;
  return adj;
}

}  // namespace detail

/// Every chordal graph on n vertices (n <= 7) up to isomorphism, unit
/// weights. Grown by adding a vertex adjacent to a clique (possibly empty),
/// which reaches every chordal graph in reverse elimination order.
inline std::vector<WeightedGraph> all_chordal_graphs(std::size_t n) {
  std::set<std::uint32_t> level{0};  // the single-vertex graph
  if (n == 0) return {WeightedGraph(0)};
  for (std::size_t size = 1; size < n; ++size) {
    std::set<std::uint32_t> next;
    for (std::uint32_t mask : level) {
      auto adj = detail::from_mask(size, mask);
      for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << size); ++sub) {
        bool clique = true;
        for (std::size_t u = 0; u < size && clique; ++u)
          for (std::size_t v = u + 1; v < size && clique; ++v)
            if ((sub >> u & 1) && (sub >> v & 1) && !adj[u][v]) clique = false;
        if (!clique) continue;
        auto bigger = adj;
        for (auto& row : bigger) row.push_back(0);
        bigger.emplace_back(size + 1, 0);
        for (std::size_t u = 0; u < size; ++u)
          if (sub >> u & 1) bigger[u][size] = bigger[size][u] = 1;
        next.insert(detail::canonical(bigger));
      }
    }
    level = std::move(next);
  }
  std::vector<WeightedGraph> out;
  for (std::uint32_t mask : level) {
    auto adj = detail::from_mask(n, mask);
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (adj[u][v]) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    out.push_back(make(n, e));
  }
  return out;
}

/// Independent properness check over an adjacency matrix.
inline bool proper_by_matrix(const WeightedGraph& g, const std::vector<int>& colors) {
  const std::size_t n = g.size();
  if (colors.size() != n) return false;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  for (std::size_t u = 0; u < n; ++u) {
    if (colors[u] < 1) return false;
    for (std::size_t v = u + 1; v < n; ++v)
      if (adj[u][v] && colors[u] == colors[v]) return false;
  }
  return true;
}

}  // namespace testing_support
