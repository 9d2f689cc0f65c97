#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chordsum/chordal.hpp"
#include "chordsum/graph.hpp"

namespace chordsum {

/// Tree T of maximum degree 3 with one connected subtree T_v per graph
/// vertex, such that uv is an edge iff T_u and T_v share a node.
///
/// `bags[a]` lists the graph vertices whose subtree contains node a (sorted);
/// `subtrees[v]` lists the nodes of T_v (sorted). Nodes with empty bags only
/// join the trees of different components.
struct CliqueTreeRepresentation {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::vector<int>> tree_adjacency;
  std::vector<std::vector<int>> subtrees;

  std::size_t node_count() const { return bags.size(); }

  std::vector<std::pair<int, int>> tree_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(tree_adjacency.size()); ++a)
      for (int b : tree_adjacency[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : tree_adjacency) d = std::max(d, nb.size());
    return d;
  }

  /// Largest number of subtrees meeting at a single node.
  std::size_t max_bag_size() const {
    std::size_t s = 0;
    for (const auto& b : bags) s = std::max(s, b.size());
    return s;
  }
};

namespace detail {

// Replaces every node of degree > 3 by a path of copies, each holding the same
// bag, and hands the original neighbors out along the path.
inline void split_high_degree(std::vector<std::vector<Vertex>>& bags,
                              std::vector<std::vector<int>>& adj) {
  for (int a = 0; a < static_cast<int>(adj.size()); ++a) {
    if (adj[a].size() <= 3) continue;
    std::vector<int> nbrs = adj[a];
    // Node a keeps two neighbors and links to a fresh copy, which takes the rest.
    int copy = static_cast<int>(bags.size());
    std::vector<Vertex> bag = bags[a];
    bags.push_back(std::move(bag));
    adj.emplace_back();
    adj[a] = {nbrs[0], nbrs[1], copy};
    adj[copy].push_back(a);
    for (std::size_t i = 2; i < nbrs.size(); ++i) {
      int b = nbrs[i];
      std::replace(adj[b].begin(), adj[b].end(), a, copy);
      adj[copy].push_back(b);
    }
    // The copy is revisited later in this loop if it still has degree > 3.
  }
}

}  // namespace detail

/// Builds the subtree representation from a PEO: one node per maximal clique
/// {v} ∪ N^left(v), attached to the node holding v's latest left neighbor;
/// components are chained through empty nodes; then degrees are reduced to 3.
inline CliqueTreeRepresentation build_clique_tree(const WeightedGraph& g,
                                                  const PerfectEliminationOrder& peo) {
  if (peo.size() != g.size() || !verify_peo(g, peo.order()))
    throw std::invalid_argument("ordering is not a perfect elimination order of this graph");
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::vector<int>> adj;
  std::vector<int> node_of(n, -1);
  std::vector<int> roots;

  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = peo.at(i);
    auto left = peo.left(v);
    if (left.empty()) {
      node_of[v] = static_cast<int>(bags.size());
      roots.push_back(node_of[v]);
      bags.push_back({v});
      adj.emplace_back();
      continue;
    }
    Vertex parent = left.front();
    for (Vertex u : left)
      if (peo.position(u) > peo.position(parent)) parent = u;
    int host = node_of[parent];
    // N^left(v) is contained in the host bag; equal sizes mean v extends it.
    if (bags[host].size() == left.size()) {
      bags[host].push_back(v);
      node_of[v] = host;
    } else {
      int fresh = static_cast<int>(bags.size());
      std::vector<Vertex> bag(left.begin(), left.end());
      bag.push_back(v);
      bags.push_back(std::move(bag));
      adj.emplace_back();
      adj[fresh].push_back(host);
      adj[host].push_back(fresh);
      node_of[v] = fresh;
    }
  }

  for (std::size_t r = 1; r < roots.size(); ++r) {
    int hub = static_cast<int>(bags.size());
    bags.emplace_back();
    adj.emplace_back();
    int prev = (r == 1) ? roots[0] : hub - 1;
    adj[hub] = {prev, roots[r]};
    adj[prev].push_back(hub);
    adj[roots[r]].push_back(hub);
  }

  detail::split_high_degree(bags, adj);

  CliqueTreeRepresentation rep;
  rep.subtrees.resize(n);
  for (int a = 0; a < static_cast<int>(bags.size()); ++a) {
    std::sort(bags[a].begin(), bags[a].end());
    std::sort(adj[a].begin(), adj[a].end());
    for (Vertex v : bags[a]) rep.subtrees[v].push_back(a);
  }
  rep.bags = std::move(bags);
  rep.tree_adjacency = std::move(adj);
  return rep;
}

}  // namespace chordsum
