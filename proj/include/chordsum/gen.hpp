#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chordsum/graph.hpp"
#include "chordsum/random.hpp"

#ifndef NDEBUG
#include "chordsum/chordal.hpp"
#endif

// Seeded generators for chordal instances.
namespace chordsum::gen {

enum class Family { ktree, interval, subtree };
enum class WeightKind { unit, uniform_int, power_of_two };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::ktree: return "ktree";
    case Family::interval: return "interval";
    case Family::subtree: return "subtree-intersection";
  }
  return "?";
}

inline const char* to_string(WeightKind w) {
  switch (w) {
    case WeightKind::unit: return "unit";
    case WeightKind::uniform_int: return "uniform-int";
    case WeightKind::power_of_two: return "exponential";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "ktree") return Family::ktree;
  if (s == "interval") return Family::interval;
  if (s == "subtree" || s == "subtree-intersection") return Family::subtree;
  throw std::invalid_argument("unknown family '" + s + "'");
}

inline WeightKind parse_weight_kind(const std::string& s) {
  if (s == "unit") return WeightKind::unit;
  if (s == "uniform-int" || s == "uniform") return WeightKind::uniform_int;
  if (s == "exponential" || s == "power-of-two") return WeightKind::power_of_two;
  throw std::invalid_argument("unknown weight distribution '" + s + "'");
}

/// What to generate.
///
/// `param` is the tree width for k-trees (integer >= 0), the length scale in
/// (0, 1] for interval graphs, and the subtree size (integer >= 1) for
/// subtree-intersection graphs. Weights are 1, uniform on 1..max_weight, or
/// 2^t with t uniform on 0..floor(log2 max_weight).
struct GenSpec {
  Family family = Family::ktree;
  std::size_t n = 1;
  double param = 1.0;
  WeightKind weights = WeightKind::unit;
  int max_weight = 10;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (max_weight < 1) throw std::invalid_argument("max_weight must be at least 1");
    switch (family) {
      case Family::ktree:
        if (param < 0 || param != std::floor(param)) throw std::invalid_argument("k-tree width must be a nonnegative integer");
        break;
      case Family::interval:
        if (!(param > 0 && param <= 1)) throw std::invalid_argument("interval density must lie in (0, 1]");
        break;
      case Family::subtree:
        if (param < 1 || param != std::floor(param)) throw std::invalid_argument("subtree size must be a positive integer");
        break;
    }
  }
};

struct Interval {
  double left;
  double right;
};

namespace detail {

inline std::vector<double> draw_weights(const GenSpec& spec, Rng& rng) {
  std::vector<double> w(spec.n, 1.0);
  switch (spec.weights) {
    case WeightKind::unit: break;
    case WeightKind::uniform_int:
      for (auto& x : w) x = 1.0 + static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(spec.max_weight)));
      break;
    case WeightKind::power_of_two: {
      int top = 0;
      while ((2 << top) <= spec.max_weight) ++top;
      for (auto& x : w) x = std::ldexp(1.0, static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(top) + 1)));
      break;
    }
  }
  return w;
}

inline std::vector<Vertex> random_labels(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  return perm;
}

inline std::vector<Edge> ktree_edges(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<Edge> edges;
  const std::size_t base = std::min(n, k + 1);
  for (std::size_t u = 0; u < base; ++u)
    for (std::size_t v = u + 1; v < base; ++v) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  if (n <= k + 1) return edges;
  // All k-subsets of the current k-cliques; attaching to one spawns k more.
  std::vector<std::vector<Vertex>> cliques;
  for (std::size_t drop = 0; drop <= k; ++drop) {
    std::vector<Vertex> q;
    for (std::size_t u = 0; u <= k; ++u)
      if (u != drop) q.push_back(static_cast<Vertex>(u));
    cliques.push_back(std::move(q));
  }
  for (std::size_t v = k + 1; v < n; ++v) {
    std::vector<Vertex> q = cliques[uniform_below(rng, cliques.size())];
    for (Vertex u : q) edges.emplace_back(u, static_cast<Vertex>(v));
    for (std::size_t drop = 0; drop < q.size(); ++drop) {
      std::vector<Vertex> nq = q;
      nq[drop] = static_cast<Vertex>(v);
      cliques.push_back(std::move(nq));
    }
  }
  return edges;
}

inline std::vector<Edge> subtree_edges(std::size_t n, std::size_t size, Rng& rng) {
  const std::size_t nodes = n;
  std::vector<std::vector<std::size_t>> tree(nodes);
  for (std::size_t a = 1; a < nodes; ++a) {
    std::size_t b = uniform_below(rng, a);
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  std::vector<std::vector<char>> member(n, std::vector<char>(nodes, 0));
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> frontier{uniform_below(rng, nodes)};
    std::size_t taken = 0;
    while (taken < size && !frontier.empty()) {
      std::size_t i = uniform_below(rng, frontier.size());
      std::size_t a = frontier[i];
      frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
      if (member[v][a]) continue;
      member[v][a] = 1;
      ++taken;
      for (std::size_t b : tree[a])
        if (!member[v][b]) frontier.push_back(b);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      for (std::size_t a = 0; a < nodes; ++a)
        if (member[u][a] && member[v][a]) {
          edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
          break;
        }
  return edges;
}

inline std::vector<Edge> relabel(std::vector<Edge> edges, const std::vector<Vertex>& perm) {
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return edges;
}

}  // namespace detail

/// The intervals behind an interval-family spec; vertex i is intervals[i].
inline std::vector<Interval> generate_intervals(const GenSpec& spec) {
  spec.validate();
  if (spec.family != Family::interval) throw std::invalid_argument("spec is not an interval family");
  Rng rng(spec.seed);
  std::vector<Interval> out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double a = uniform01(rng), b = uniform01(rng);
    double lo = std::min(a, b), hi = std::max(a, b);
    out.push_back({lo, lo + spec.param * (hi - lo)});
  }
  return out;
}

inline bool intervals_intersect(const Interval& a, const Interval& b) {
  return a.left <= b.right && b.left <= a.right;
}

inline WeightedGraph generate(const GenSpec& spec) {
  spec.validate();
  std::vector<Edge> edges;
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::ktree: {
      edges = detail::ktree_edges(spec.n, static_cast<std::size_t>(spec.param), rng);
      edges = detail::relabel(std::move(edges), detail::random_labels(spec.n, rng));
      break;
    }
    case Family::interval: {
      auto iv = generate_intervals(spec);
      for (std::size_t u = 0; u < spec.n; ++u)
        for (std::size_t v = u + 1; v < spec.n; ++v)
          if (intervals_intersect(iv[u], iv[v])) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      // Keep the weight stream independent of the interval draws.
      rng.discard(2 * spec.n);
      break;
    }
    case Family::subtree:
      edges = detail::subtree_edges(spec.n, static_cast<std::size_t>(spec.param), rng);
      break;
  }
  WeightedGraph g(spec.n, edges, detail::draw_weights(spec, rng));
#ifndef NDEBUG
  if (!recognize_chordal(g).chordal()) throw InvariantViolation("generator produced a non-chordal graph");
#endif
  return g;
}

}  // namespace chordsum::gen
