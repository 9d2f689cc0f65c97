#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chordsum/lp/linear_program.hpp"
#include "chordsum/lp/simplex.hpp"

namespace chordsum::lp {

struct ColumnGenerationOptions {
  SimplexOptions simplex;
  /// 0 means 10 * (master rows) + 1000.
  std::size_t max_iterations = 0;
};

struct ColumnGenerationResult {
  LpSolution solution;
  /// The master with every generated column appended, in generation order.
  LinearProgram master;
  std::size_t first_generated = 0;
  std::size_t iterations = 0;
  std::size_t columns_added = 0;
};

/// Solves `master` restricted to its current columns, then repeatedly asks
/// `pricer` for improving columns given the restricted optimum (its duals in
/// particular) and re-optimizes from the previous basis. Stops when the
/// pricer returns no columns.
///
/// Pricer: std::vector<Column>(const LpSolution&). Any non-optimal master
/// solve is raised as SolveError, as is exceeding the iteration cap.
template <class Pricer>
ColumnGenerationResult solve_with_column_generation(LinearProgram master, Pricer&& pricer,
                                                    ColumnGenerationOptions options = {}) {
  ColumnGenerationResult out;
  out.first_generated = master.variable_count();
  const std::size_t cap =
      options.max_iterations ? options.max_iterations : 10 * master.constraint_count() + 1000;
  Simplex simplex(master, options.simplex);
  while (true) {
    Status st = simplex.run();
    if (st != Status::optimal)
      throw SolveError(st, std::string("restricted master ended ") + to_string(st));
    LpSolution current = simplex.solution(/*refine=*/false);
    std::vector<Column> columns = pricer(current);
    if (columns.empty()) break;
    if (++out.iterations > cap)
      throw SolveError(Status::iteration_limit,
                       "column generation exceeded " + std::to_string(cap) + " pricing rounds");
    for (const auto& col : columns) {
      simplex.add_column(col);
      master.add_column(col);
      ++out.columns_added;
    }
  }
  out.solution = simplex.solution(/*refine=*/true);
  out.master = std::move(master);
  return out;
}

}  // namespace chordsum::lp
