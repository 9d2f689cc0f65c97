#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "chordsum/lp/linear_program.hpp"

namespace chordsum::lp {

namespace detail {

inline std::string lp_name(const std::string& name, char prefix, std::size_t index) {
  std::string out;
  for (char ch : name)
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') ? ch : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) || out[0] == '.')
    out = std::string(1, prefix) + std::to_string(index) + (out.empty() ? "" : "_" + out);
  return out;
}

inline void write_term(std::ostream& out, double coef, const std::string& var, bool first) {
  if (coef < 0) out << (first ? "-" : " - ");
  else if (!first) out << " + ";
  double a = std::abs(coef);
  if (a != 1.0) out << a << ' ';
  out << var;
}

}  // namespace detail

/// Writes `lp` in CPLEX LP text format (debug dumps).
inline void write_lp_format(std::ostream& out, const LinearProgram& lp) {
  const auto& vars = lp.variables();
  const auto& rows = lp.constraints();
  std::vector<std::string> names;
  for (std::size_t j = 0; j < vars.size(); ++j) names.push_back(detail::lp_name(vars[j].name, 'x', j));
  auto old = out.precision(std::numeric_limits<double>::max_digits10);

  out << (lp.sense() == Sense::minimize ? "Minimize" : "Maximize") << "\n obj: ";
  bool first = true;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].cost == 0.0) continue;
    detail::write_term(out, vars[j].cost, names[j], first);
    first = false;
  }
  if (first) out << "0 " << (names.empty() ? "dummy" : names[0]);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << ' ' << detail::lp_name(rows[i].name, 'r', i) << ": ";
    first = true;
    for (auto t : rows[i].terms) {
      detail::write_term(out, t.coef, names[t.var], first);
      first = false;
    }
    if (first) out << "0 " << (names.empty() ? "dummy" : names[0]);
    switch (rows[i].relation) {
      case Relation::less_equal: out << " <= "; break;
      case Relation::equal: out << " = "; break;
      case Relation::greater_equal: out << " >= "; break;
    }
    out << rows[i].rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    bool lo = std::isfinite(v.lower), hi = std::isfinite(v.upper);
    if (!lo && !hi) out << ' ' << names[j] << " free\n";
    else if (lo && hi) out << ' ' << v.lower << " <= " << names[j] << " <= " << v.upper << '\n';
    else if (lo && v.lower != 0.0) out << ' ' << names[j] << " >= " << v.lower << '\n';
    else if (!lo) out << " -inf <= " << names[j] << " <= " << v.upper << '\n';
  }
  out << "End\n";
  out.precision(old);
}

inline void write_lp_file(const std::string& path, const LinearProgram& lp) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_lp_format(out, lp);
}

}  // namespace chordsum::lp
