#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chordsum::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

struct Term {
  int var;
  double coef;
};

struct RowEntry {
  int row;
  double coef;
};

struct Variable {
  std::string name;
  double cost = 0.0;
  double lower = 0.0;
  double upper = kInfinity;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// A variable to be appended to an existing program: bounds [0, inf), with
/// sparse coefficients given per constraint row.
struct Column {
  std::string name;
  double cost = 0.0;
  std::vector<RowEntry> entries;
};

class LinearProgram {
public:
  explicit LinearProgram(Sense sense = Sense::minimize) : sense_(sense) {}

  int add_variable(double cost, double lower = 0.0, double upper = kInfinity, std::string name = {}) {
    vars_.push_back(Variable{std::move(name), cost, lower, upper});
    return static_cast<int>(vars_.size()) - 1;
  }

  int add_constraint(std::vector<Term> terms, Relation relation, double rhs, std::string name = {}) {
    rows_.push_back(Constraint{std::move(name), std::move(terms), relation, rhs});
    return static_cast<int>(rows_.size()) - 1;
  }

  int add_column(const Column& col) {
    int v = add_variable(col.cost, 0.0, kInfinity, col.name);
    for (auto e : col.entries) {
      if (e.row < 0 || e.row >= static_cast<int>(rows_.size()))
        throw std::invalid_argument("column references undeclared row");
      rows_[e.row].terms.push_back(Term{v, e.coef});
    }
    return v;
  }

  Sense sense() const { return sense_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t variable_count() const { return vars_.size(); }
  std::size_t constraint_count() const { return rows_.size(); }

  void validate() const {
    for (const auto& v : vars_) {
      if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
        throw std::invalid_argument("variable '" + v.name + "' has lower > upper");
      if (v.lower == kInfinity || v.upper == -kInfinity)
        throw std::invalid_argument("variable '" + v.name + "' has an empty domain");
      if (!std::isfinite(v.cost)) throw std::invalid_argument("variable '" + v.name + "' has a non-finite cost");
    }
    for (const auto& r : rows_) {
      if (!std::isfinite(r.rhs)) throw std::invalid_argument("constraint '" + r.name + "' has a non-finite rhs");
      for (auto t : r.terms) {
        if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
          throw std::invalid_argument("constraint '" + r.name + "' references an undeclared variable");
        if (!std::isfinite(t.coef))
          throw std::invalid_argument("constraint '" + r.name + "' has a non-finite coefficient");
      }
    }
  }

  /// Row activity a·x for every constraint.
  std::vector<double> activities(const std::vector<double>& x) const {
    std::vector<double> act(rows_.size(), 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (auto t : rows_[i].terms) act[i] += t.coef * x[t.var];
    return act;
  }

  double objective_value(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) s += vars_[j].cost * x[j];
    return s;
  }

private:
  Sense sense_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "?";
}

/// Result of a solve. Duals follow the convention reduced_cost = c - A^T y:
/// in a minimization, y >= 0 on >= rows and y <= 0 on <= rows; signs flip for
/// maximization.
struct LpSolution {
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::size_t pivots = 0;

  bool optimal() const { return status == Status::optimal; }
};

/// Raised when a solve ends in anything other than a proven optimum where the
/// caller needs one.
class SolveError : public std::runtime_error {
public:
  SolveError(Status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

private:
  Status status_;
};

}  // namespace chordsum::lp
