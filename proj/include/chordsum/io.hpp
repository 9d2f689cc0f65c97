#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordsum/graph.hpp"

namespace chordsum::io {

/// Graph text format, 1-indexed vertices:
///
///   c free-form comment
///   p <n> <m>
///   w <vertex> <weight>      (optional, default weight 1)
///   e <u> <v>
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

inline WeightedGraph read_graph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::vector<bool> weight_set;

  auto vertex_arg = [&](std::istringstream& ss, const char* what) {
    long long v;
    if (!(ss >> v)) throw ParseError(line_no, std::string("expected ") + what);
    if (v < 1 || v > n)
      throw ParseError(line_no, std::string(what) + " " + std::to_string(v) + " out of range 1.." +
                                    std::to_string(n));
    return static_cast<Vertex>(v - 1);
  };
  auto expect_end = [&](std::istringstream& ss) {
    std::string rest;
    if (ss >> rest) throw ParseError(line_no, "trailing token '" + rest + "'");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ss(raw);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw ParseError(line_no, "duplicate 'p' line");
      if (!(ss >> n >> m) || n < 0 || m < 0)
        throw ParseError(line_no, "expected 'p <n> <m>' with nonnegative counts");
      expect_end(ss);
      have_header = true;
      weights.assign(static_cast<std::size_t>(n), 1.0);
      weight_set.assign(static_cast<std::size_t>(n), false);
    } else if (tag == "w") {
      if (!have_header) throw ParseError(line_no, "'w' before 'p' line");
      Vertex v = vertex_arg(ss, "vertex");
      double w;
      if (!(ss >> w) || !std::isfinite(w) || w < 0)
        throw ParseError(line_no, "expected nonnegative finite weight");
      expect_end(ss);
      if (weight_set[v]) throw ParseError(line_no, "weight of vertex " + std::to_string(v + 1) + " set twice");
      weight_set[v] = true;
      weights[v] = w;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(line_no, "'e' before 'p' line");
      Vertex u = vertex_arg(ss, "vertex");
      Vertex v = vertex_arg(ss, "vertex");
      expect_end(ss);
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u + 1));
      edges.emplace_back(u, v);
    } else {
      throw ParseError(line_no, "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p <n> <m>' line");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  try {
    return WeightedGraph(static_cast<std::size_t>(n), edges, std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  return read_graph(in);
}

inline WeightedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "p " << g.size() << ' ' << g.edge_count() << '\n';
  auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (g.weight(v) != 1.0) out << "w " << v + 1 << ' ' << g.weight(v) << '\n';
  out.precision(old);
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace chordsum::io
