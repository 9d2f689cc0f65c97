#pragma once

#include <algorithm>
#include <cstddef>
#include <list>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordsum/graph.hpp"

namespace chordsum {

/// Lexicographic breadth-first search by partition refinement, O(n + m).
///
/// Ties between vertices with equal labels go to the lowest vertex id. The
/// visit order has the property that, on a chordal graph, the neighbors of
/// every vertex visited before it form a clique.
inline std::vector<Vertex> lex_bfs(const WeightedGraph& g) {
  struct Cell {
    std::list<Vertex> members;
    std::size_t stamp = 0;
    std::list<Cell>::iterator split;
  };
  const std::size_t n = g.size();
  std::list<Cell> cells;
  std::vector<std::list<Cell>::iterator> cell_of(n);
  std::vector<std::list<Vertex>::iterator> slot(n);
  std::vector<char> visited(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  if (n == 0) return order;

  cells.emplace_back();
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    slot[v] = cells.front().members.insert(cells.front().members.end(), v);
    cell_of[v] = cells.begin();
  }

  for (std::size_t stamp = 1; stamp <= n; ++stamp) {
    auto head = cells.begin();
    Vertex v = head->members.front();
    head->members.pop_front();
    if (head->members.empty()) cells.erase(head);
    visited[v] = 1;
    order.push_back(v);

    for (Vertex w : g.neighbors(v)) {
      if (visited[w]) continue;
      auto from = cell_of[w];
      if (from->stamp != stamp) {
        from->stamp = stamp;
        from->split = cells.emplace(from);
      }
      auto to = from->split;
      to->members.splice(to->members.end(), from->members, slot[w]);
      cell_of[w] = to;
      if (from->members.empty()) cells.erase(from);
    }
  }
  return order;
}

namespace detail {

inline std::vector<std::size_t> positions_of(std::size_t n, std::span<const Vertex> order) {
  if (order.size() != n) throw std::invalid_argument("ordering is not a permutation of the vertices");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || pos[v] != n)
      throw std::invalid_argument("ordering is not a permutation of the vertices");
    pos[v] = i;
  }
  return pos;
}

}  // namespace detail

/// A failed left-neighborhood: `vertex` has left neighbors `parent` (its
/// latest one) and `other`, which are not adjacent.
struct PeoViolation {
  Vertex vertex;
  Vertex parent;
  Vertex other;
};

/// Parent check: every left neighborhood is a clique iff for each vertex, its
/// left neighbors other than the latest one are all left neighbors of that
/// latest one. Linear time.
inline std::optional<PeoViolation> find_peo_violation(const WeightedGraph& g,
                                                      std::span<const Vertex> order) {
  const std::size_t n = g.size();
  auto pos = detail::positions_of(n, order);
  std::vector<Vertex> parent(n, -1);
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    for (Vertex u : g.neighbors(v))
      if (pos[u] < pos[v] && (parent[v] < 0 || pos[u] > pos[parent[v]])) parent[v] = u;
    if (parent[v] >= 0) children[parent[v]].push_back(v);
  }
  std::vector<char> mark(n, 0);
  for (Vertex p = 0; p < static_cast<Vertex>(n); ++p) {
    if (children[p].empty()) continue;
    for (Vertex u : g.neighbors(p)) mark[u] = 1;
    for (Vertex v : children[p])
      for (Vertex u : g.neighbors(v))
        if (pos[u] < pos[v] && u != p && !mark[u]) return PeoViolation{v, p, u};
    for (Vertex u : g.neighbors(p)) mark[u] = 0;
  }
  return std::nullopt;
}

/// True iff every vertex's earlier neighbors in `order` form a clique.
/// Throws std::invalid_argument when `order` is not a permutation.
inline bool verify_peo(const WeightedGraph& g, std::span<const Vertex> order) {
  return !find_peo_violation(g, order).has_value();
}

/// Vertex ordering v_1..v_n in which each N^left(v_i) is a clique.
class PerfectEliminationOrder {
public:
  /// Checks `order` against `g`; throws std::invalid_argument if it is not a PEO.
  static PerfectEliminationOrder from(const WeightedGraph& g, std::vector<Vertex> order) {
    if (!verify_peo(g, order)) throw std::invalid_argument("ordering is not a perfect elimination order");
    PerfectEliminationOrder peo;
    peo.position_ = detail::positions_of(g.size(), order);
    peo.order_ = std::move(order);
    peo.left_.resize(g.size());
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
      for (Vertex u : g.neighbors(v))
        if (peo.position_[u] < peo.position_[v]) peo.left_[v].push_back(u);
    return peo;
  }

  std::size_t size() const { return order_.size(); }
  const std::vector<Vertex>& order() const { return order_; }
  Vertex at(std::size_t i) const { return order_[i]; }
  std::size_t position(Vertex v) const { return position_[v]; }
  /// Earlier neighbors of v, ascending by vertex id.
  std::span<const Vertex> left(Vertex v) const { return left_[v]; }

  /// Largest left neighborhood plus one: the clique number.
  std::size_t clique_number() const {
    std::size_t best = 0;
    for (const auto& l : left_) best = std::max(best, l.size() + 1);
    return best;
  }

  /// Restriction to `keep` (ascending vertex ids of g), renumbered as in
  /// induced_subgraph(g, keep). The restriction of a PEO is a PEO.
  PerfectEliminationOrder restricted(const WeightedGraph& sub, std::span<const Vertex> keep) const {
    std::vector<int> index(position_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    std::vector<Vertex> order;
    order.reserve(keep.size());
    for (Vertex v : order_)
      if (index[v] >= 0) order.push_back(index[v]);
    return from(sub, std::move(order));
  }

private:
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<Vertex>> left_;
};

namespace detail {

// Shortest path from `from` to `to` avoiding blocked vertices; empty if none.
inline std::vector<Vertex> shortest_path(const WeightedGraph& g, Vertex from, Vertex to,
                                         const std::vector<char>& blocked) {
  std::vector<Vertex> prev(g.size(), -1);
  std::vector<char> seen(g.size(), 0);
  std::queue<Vertex> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    if (x == to) break;
    for (Vertex y : g.neighbors(x))
      if (!seen[y] && !blocked[y]) {
        seen[y] = 1;
        prev[y] = x;
        q.push(y);
      }
  }
  if (!seen[to]) return {};
  std::vector<Vertex> path;
  for (Vertex x = to; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// Induced cycle through v whose neighbors on the cycle are a and b (a, b
// nonadjacent neighbors of v): v followed by a shortest a-b path that avoids
// every other neighbor of v. Empty if no such path.
inline std::vector<Vertex> induced_cycle_through(const WeightedGraph& g, Vertex v, Vertex a, Vertex b) {
  std::vector<char> blocked(g.size(), 0);
  blocked[v] = 1;
  for (Vertex u : g.neighbors(v))
    if (u != a && u != b) blocked[u] = 1;
  auto path = shortest_path(g, a, b, blocked);
  if (path.empty()) return {};
  std::vector<Vertex> cycle{v};
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

}  // namespace detail

/// Outcome of chordality recognition: a PEO, or an induced cycle of length
/// at least four listed in cyclic order.
class ChordalityResult {
public:
  explicit ChordalityResult(PerfectEliminationOrder peo) : peo_(std::move(peo)) {}
  explicit ChordalityResult(std::vector<Vertex> cycle) : cycle_(std::move(cycle)) {}

  bool chordal() const { return peo_.has_value(); }
  const PerfectEliminationOrder& peo() const {
    if (!peo_) throw std::logic_error("graph is not chordal");
    return *peo_;
  }
  const std::vector<Vertex>& cycle() const { return cycle_; }

private:
  std::optional<PerfectEliminationOrder> peo_;
  std::vector<Vertex> cycle_;
};

inline ChordalityResult recognize_chordal(const WeightedGraph& g) {
  auto order = lex_bfs(g);
  auto violation = find_peo_violation(g, order);
  if (!violation) return ChordalityResult(PerfectEliminationOrder::from(g, std::move(order)));

  auto cycle = detail::induced_cycle_through(g, violation->vertex, violation->other, violation->parent);
  if (!cycle.empty()) return ChordalityResult(std::move(cycle));

  // Exhaustive witness search; a chordless cycle through v exists iff some pair
  // of nonadjacent neighbors of v is joined outside the rest of N[v].
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        cycle = detail::induced_cycle_through(g, v, nb[i], nb[j]);
        if (!cycle.empty()) return ChordalityResult(std::move(cycle));
      }
  }
  throw InvariantViolation("ordering check failed but no induced cycle exists");
}

/// Thrown by solvers that require a chordal input.
class NotChordal : public std::invalid_argument {
public:
  explicit NotChordal(std::vector<Vertex> cycle)
      : std::invalid_argument("graph is not chordal (induced cycle of length " +
                              std::to_string(cycle.size()) + ")"),
        cycle_(std::move(cycle)) {}
  const std::vector<Vertex>& cycle() const { return cycle_; }

private:
  std::vector<Vertex> cycle_;
};

inline PerfectEliminationOrder require_chordal(const WeightedGraph& g) {
  auto r = recognize_chordal(g);
  if (!r.chordal()) throw NotChordal(r.cycle());
  return r.peo();
}

/// Smallest free color along the PEO; uses exactly the clique number.
inline Coloring greedy_color(const WeightedGraph& g, const PerfectEliminationOrder& peo) {
  std::vector<int> colors(g.size(), 0);
  std::vector<std::size_t> taken(g.size() + 2, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < peo.size(); ++i) {
    Vertex v = peo.at(i);
    for (Vertex u : peo.left(v)) taken[colors[u]] = i;
    int c = 1;
    while (taken[c] == i) ++c;
    colors[v] = c;
  }
  return Coloring::of(g, std::move(colors));
}

/// Maximum-weight independent set of a chordal graph (Frank's two-pass
/// algorithm). Vertices with weight 0 are never chosen. Ascending ids.
inline std::vector<Vertex> max_weight_independent_set(const WeightedGraph& g,
                                                      const PerfectEliminationOrder& peo) {
  const std::size_t n = g.size();
  std::vector<double> residual = g.weights();
  std::vector<char> red(n, 0);
  // Simplicial-first elimination runs the PEO backwards.
  for (std::size_t i = n; i-- > 0;) {
    Vertex v = peo.at(i);
    if (residual[v] > 0.0) {
      red[v] = 1;
      for (Vertex u : peo.left(v)) residual[u] -= residual[v];
    }
  }
  std::vector<char> blocked(n, 0);
  std::vector<Vertex> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = peo.at(i);
    if (!red[v] || blocked[v]) continue;
    chosen.push_back(v);
    for (Vertex u : g.neighbors(v)) blocked[u] = 1;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace chordsum
