#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chordsum {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when a result object would violate one of its own invariants.
/// Reaching this is always a bug in the producing algorithm.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Undirected simple graph on vertices 0..n-1 with nonnegative vertex weights.
///
/// Adjacency lists are kept sorted so membership tests are a binary search and
/// iteration order is deterministic.
class WeightedGraph {
public:
  WeightedGraph() = default;

  explicit WeightedGraph(std::size_t n) : adj_(n), weights_(n, 1.0) {}

  WeightedGraph(std::size_t n, std::span<const Edge> edges)
      : WeightedGraph(n, edges, std::vector<double>(n, 1.0)) {}

  WeightedGraph(std::size_t n, std::span<const Edge> edges,
                std::vector<double> weights)
      : adj_(n), weights_(std::move(weights)) {
    if (weights_.size() != n)
      throw std::invalid_argument("weight vector size does not match vertex count");
    for (double w : weights_)
      if (!(w >= 0.0))
        throw std::invalid_argument("vertex weights must be nonnegative");
    for (auto [u, v] : edges) {
      check_vertex(u);
      check_vertex(v);
      if (u == v)
        throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end())
        throw std::invalid_argument("parallel edge in edge list");
    }
    edge_count_ = edges.size();
  }

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
  }

  double weight(Vertex v) const { return weights_[v]; }
  const std::vector<double>& weights() const { return weights_; }

  double total_weight() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  /// Same graph, different weights.
  WeightedGraph reweighted(std::vector<double> weights) const {
    if (weights.size() != size())
      throw std::invalid_argument("weight vector size does not match vertex count");
    for (double w : weights)
      if (!(w >= 0.0))
        throw std::invalid_argument("vertex weights must be nonnegative");
    WeightedGraph g = *this;
    g.weights_ = std::move(weights);
    return g;
  }

  /// Edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

private:
  void check_vertex(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
      throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<double> weights_;
  std::size_t edge_count_ = 0;
};

/// Induced subgraph on `keep` (any order). Vertex i of the result is keep[i].
inline WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> keep) {
  std::vector<int> index(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  std::vector<double> weights;
  weights.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Vertex u = keep[i];
    weights.push_back(g.weight(u));
    for (Vertex v : g.neighbors(u))
      if (index[v] > static_cast<int>(i)) edges.emplace_back(static_cast<Vertex>(i), index[v]);
  }
  return WeightedGraph(keep.size(), edges, std::move(weights));
}

inline bool is_proper_coloring(const WeightedGraph& g, std::span<const int> colors) {
  if (colors.size() != g.size()) return false;
  for (Vertex u = 0; u < static_cast<Vertex>(g.size()); ++u) {
    if (colors[u] < 1) return false;
    for (Vertex v : g.neighbors(u))
      if (colors[u] == colors[v]) return false;
  }
  return true;
}

/// Proper coloring with positive integer colors and its weighted color sum.
///
/// The only way to obtain one is through `Coloring::of`, which rejects
/// improper assignments, so every Coloring in the program is proper.
class Coloring {
public:
  static Coloring of(const WeightedGraph& g, std::vector<int> colors) {
    if (!is_proper_coloring(g, colors))
      throw InvariantViolation("coloring is not proper");
    Coloring c;
    c.colors_ = std::move(colors);
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
      c.objective_ += g.weight(v) * c.colors_[v];
    return c;
  }

  const std::vector<int>& colors() const { return colors_; }
  int color(Vertex v) const { return colors_[v]; }
  double objective() const { return objective_; }

  int max_color() const {
    return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
  }

  std::size_t distinct_colors() const {
    std::vector<int> c = colors_;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

private:
  Coloring() = default;
  std::vector<int> colors_;
  double objective_ = 0.0;
};

/// Relabels used colors to 1..t preserving their relative order. Never
/// increases the weighted sum.
inline std::vector<int> compact_colors(std::vector<int> colors) {
  std::vector<int> used = colors;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int& c : colors)
    c = static_cast<int>(std::lower_bound(used.begin(), used.end(), c) - used.begin()) + 1;
  return colors;
}

}  // namespace chordsum
