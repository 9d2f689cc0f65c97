#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chordsum/graph.hpp"

namespace chordsum {

/// A vertex set S with G[S] colorable by `color_budget` colors, certified by
/// `witness` (witness[i] is the color of selected[i]).
struct MkcsResult {
  std::vector<Vertex> selected;
  std::vector<int> witness;
  double weight = 0.0;
  int color_budget = 0;

  /// Validates and wraps. `selected` may be in any order; it is sorted along
  /// with its witness.
  static MkcsResult of(const WeightedGraph& g, std::vector<Vertex> selected, std::vector<int> witness,
                       int color_budget) {
    if (selected.size() != witness.size())
      throw InvariantViolation("witness size does not match selected set");
    std::vector<std::size_t> idx(selected.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return selected[a] < selected[b]; });
    MkcsResult r;
    r.color_budget = color_budget;
    for (auto i : idx) {
      r.selected.push_back(selected[i]);
      r.witness.push_back(witness[i]);
    }
    std::vector<int> color_of(g.size(), 0);
    for (std::size_t i = 0; i < r.selected.size(); ++i) {
      Vertex v = r.selected[i];
      if (v < 0 || static_cast<std::size_t>(v) >= g.size() || color_of[v] != 0)
        throw InvariantViolation("selected set has an invalid or repeated vertex");
      if (r.witness[i] < 1 || r.witness[i] > color_budget)
        throw InvariantViolation("witness color " + std::to_string(r.witness[i]) + " outside 1.." +
                                 std::to_string(color_budget));
      color_of[v] = r.witness[i];
    }
    for (Vertex v : r.selected) {
      for (Vertex u : g.neighbors(v))
        if (color_of[u] == color_of[v]) throw InvariantViolation("witness coloring is not proper");
      r.weight += g.weight(v);
    }
    return r;
  }

  bool contains(Vertex v) const { return std::binary_search(selected.begin(), selected.end(), v); }
};

}  // namespace chordsum
