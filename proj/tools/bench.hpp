#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chordsum/chordal.hpp"
#include "chordsum/gen.hpp"
#include "chordsum/graph.hpp"
#include "chordsum/io.hpp"
#include "chordsum/msc.hpp"
#include "chordsum/oracle.hpp"

namespace chordsum::bench {

using nlohmann::json;

/// Value as printed with 9 significant digits, read back.
inline double round9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

inline std::string fmt9(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

/// Either a generator spec or a graph file.
struct InstanceSpec {
  std::string file;
  gen::GenSpec gen;
};

struct InstanceInfo {
  std::string id;
  std::string file;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string family;
  std::uint64_t seed = 0;
  double param = 0.0;
  std::string weights;
  int max_weight = 0;

  bool operator==(const InstanceInfo&) const = default;
};

struct RunRecord {
  InstanceInfo instance;
  std::string algorithm;
  double epsilon = 0.0;
  std::optional<double> c;
  std::string status = "ok";
  std::string error;
  std::optional<double> objective;
  std::optional<double> lp_value;
  std::optional<double> ratio_vs_lp;
  std::optional<double> oracle_value;
  std::optional<double> ratio_vs_oracle;
  double wall_ms = 0.0;
  std::size_t iterations = 0;
  std::size_t columns = 0;

  bool operator==(const RunRecord&) const = default;
};

namespace detail {

inline json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

inline std::optional<double> opt_round(std::optional<double> v) {
  if (v) *v = round9(*v);
  return v;
}

}  // namespace detail

inline json to_json(const InstanceInfo& i) {
  return json{{"id", i.id},         {"file", i.file},       {"n", i.n},
              {"m", i.m},           {"family", i.family},   {"seed", i.seed},
              {"param", i.param},   {"weights", i.weights}, {"max_weight", i.max_weight}};
}

inline InstanceInfo instance_from_json(const json& j) {
  InstanceInfo i;
  i.id = j.at("id").get<std::string>();
  i.file = j.at("file").get<std::string>();
  i.n = j.at("n").get<std::size_t>();
  i.m = j.at("m").get<std::size_t>();
  i.family = j.at("family").get<std::string>();
  i.seed = j.at("seed").get<std::uint64_t>();
  i.param = j.at("param").get<double>();
  i.weights = j.at("weights").get<std::string>();
  i.max_weight = j.at("max_weight").get<int>();
  return i;
}

inline json to_json(const RunRecord& r) {
  return json{{"instance", to_json(r.instance)},
              {"algorithm", r.algorithm},
              {"params", {{"epsilon", r.epsilon}, {"c", detail::opt(r.c)}}},
              {"status", r.status},
              {"error", r.error},
              {"objective", detail::opt(r.objective)},
              {"lp_value", detail::opt(r.lp_value)},
              {"ratio_vs_lp", detail::opt(r.ratio_vs_lp)},
              {"oracle_value", detail::opt(r.oracle_value)},
              {"ratio_vs_oracle", detail::opt(r.ratio_vs_oracle)},
              {"wall_ms", r.wall_ms},
              {"iterations", r.iterations},
              {"columns", r.columns}};
}

inline RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.instance = instance_from_json(j.at("instance"));
  r.algorithm = j.at("algorithm").get<std::string>();
  r.epsilon = j.at("params").at("epsilon").get<double>();
  r.c = detail::opt_from(j.at("params"), "c");
  r.status = j.at("status").get<std::string>();
  r.error = j.at("error").get<std::string>();
  r.objective = detail::opt_from(j, "objective");
  r.lp_value = detail::opt_from(j, "lp_value");
  r.ratio_vs_lp = detail::opt_from(j, "ratio_vs_lp");
  r.oracle_value = detail::opt_from(j, "oracle_value");
  r.ratio_vs_oracle = detail::opt_from(j, "ratio_vs_oracle");
  r.wall_ms = j.at("wall_ms").get<double>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.columns = j.at("columns").get<std::size_t>();
  return r;
}

/// Rounds every float to 9 significant digits so the JSON text round-trips.
inline void normalize(RunRecord& r) {
  r.instance.param = round9(r.instance.param);
  r.epsilon = round9(r.epsilon);
  r.c = detail::opt_round(r.c);
  r.objective = detail::opt_round(r.objective);
  r.lp_value = detail::opt_round(r.lp_value);
  r.ratio_vs_lp = detail::opt_round(r.ratio_vs_lp);
  r.oracle_value = detail::opt_round(r.oracle_value);
  r.ratio_vs_oracle = detail::opt_round(r.ratio_vs_oracle);
  r.wall_ms = round9(r.wall_ms);
}

inline gen::GenSpec gen_spec_from_json(const json& j) {
  gen::GenSpec s;
  s.family = gen::parse_family(j.at("family").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.param = j.value("param", 1.0);
  s.weights = gen::parse_weight_kind(j.value("weights", std::string("unit")));
  s.max_weight = j.value("W", 10);
  s.seed = j.value("seed", std::uint64_t{0});
  s.validate();
  return s;
}

inline json gen_spec_to_json(const gen::GenSpec& s) {
  return json{{"family", gen::to_string(s.family)},
              {"n", s.n},
              {"param", s.param},
              {"weights", gen::to_string(s.weights)},
              {"W", s.max_weight},
              {"seed", s.seed},
              {"rng", kRngName}};
}

/// Accepts an array of entries or {"instances": [...]}. An entry is either
/// {"file": path} or a generator spec; "seeds": t expands to t consecutive seeds.
inline std::vector<InstanceSpec> parse_spec_set(const json& j) {
  const json& list = j.is_object() && j.contains("instances") ? j.at("instances") : j;
  if (!list.is_array()) throw std::invalid_argument("spec set must be a JSON array of instances");
  std::vector<InstanceSpec> out;
  for (const auto& e : list) {
    if (e.contains("file")) {
      out.push_back({e.at("file").get<std::string>(), {}});
      continue;
    }
    gen::GenSpec s = gen_spec_from_json(e);
    const std::uint64_t count = e.value("seeds", std::uint64_t{1});
    for (std::uint64_t t = 0; t < count; ++t) {
      gen::GenSpec si = s;
      si.seed = s.seed + t;
      out.push_back({"", si});
    }
  }
  return out;
}

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"coverage-concat", "greedy4", "lp"};
  return names;
}

struct BenchOptions {
  std::vector<std::string> algorithms = known_algorithms();
  double epsilon = 0.1;
  std::optional<double> c;
  oracle::OracleBudget budget;
};

/// Raised when a recomputed objective or a ratio contradicts what a solver
/// reported; the harness stops instead of writing the record.
class BenchInvariantFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

namespace detail {

inline InstanceInfo describe(const InstanceSpec& spec, const WeightedGraph& g) {
  InstanceInfo info;
  info.n = g.size();
  info.m = g.edge_count();
  if (!spec.file.empty()) {
    info.id = spec.file;
    info.file = spec.file;
    info.family = "file";
    return info;
  }
  info.family = gen::to_string(spec.gen.family);
  info.seed = spec.gen.seed;
  info.param = spec.gen.param;
  info.weights = gen::to_string(spec.gen.weights);
  info.max_weight = spec.gen.max_weight;
  info.id = info.family + "-n" + std::to_string(info.n) + "-p" + fmt9(info.param) + "-" + info.weights + "-W" +
            std::to_string(info.max_weight) + "-s" + std::to_string(info.seed);
  return info;
}

inline double weighted_sum(const WeightedGraph& g, const std::vector<int>& colors) {
  double s = 0.0;
  for (std::size_t v = 0; v < g.size(); ++v) s += g.weight(static_cast<Vertex>(v)) * colors[v];
  return s;
}

}  // namespace detail

/// Runs every requested algorithm on one instance. Solver failures become
/// records with status "error"; inconsistencies throw BenchInvariantFailure.
inline std::vector<RunRecord> run_instance(const InstanceSpec& spec, const BenchOptions& options) {
  WeightedGraph g = spec.file.empty() ? gen::generate(spec.gen) : io::read_graph_file(spec.file);
  InstanceInfo info = detail::describe(spec, g);
  std::vector<std::string> algorithms = options.algorithms;
  std::sort(algorithms.begin(), algorithms.end());

  auto blank = [&](const std::string& algorithm) {
    RunRecord r;
    r.instance = info;
    r.algorithm = algorithm;
    r.epsilon = options.epsilon;
    return r;
  };

  auto recognized = recognize_chordal(g);
  if (!recognized.chordal()) {
    std::vector<RunRecord> out;
    for (const auto& a : algorithms) {
      RunRecord r = blank(a);
      r.status = "error";
      r.error = "graph is not chordal";
      normalize(r);
      out.push_back(r);
    }
    return out;
  }
  const PerfectEliminationOrder& peo = recognized.peo();

  std::optional<double> lp_value;
  try {
    lp_value = solve_config_lp(g, peo, exact_mkcs_oracle(g, peo)).cost;
  } catch (const std::exception&) {
    lp_value.reset();
  }
  std::optional<double> oracle_value;
  if (g.size() <= options.budget.max_msc_vertices) {
    try {
      oracle_value = oracle::brute_msc(g, options.budget).objective();
    } catch (const oracle::BudgetExceeded&) {
      oracle_value.reset();
    }
  }

  std::vector<RunRecord> out;
  for (const auto& a : algorithms) {
    RunRecord r = blank(a);
    r.lp_value = lp_value;
    r.oracle_value = oracle_value;
    auto start = std::chrono::steady_clock::now();
    try {
      std::optional<Coloring> col;
      if (a == "lp") {
        MscApproxResult res = msc_approx(g, options.epsilon, {}, options.c);
        r.c = res.c;
        r.iterations = res.iterations;
        r.columns = res.columns_generated;
        col = std::move(res.coloring);
      } else if (a == "greedy4") {
        col = greedy_msc_4approx(g, peo);
      } else if (a == "coverage-concat") {
        r.c = options.c ? *options.c : optimal_c(1.0, 1.0).c;
        col = coverage_concat_msc(g, peo, *r.c);
      } else {
        throw std::invalid_argument("unknown algorithm '" + a + "'");
      }
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (!is_proper_coloring(g, col->colors())) throw BenchInvariantFailure(a + " emitted an improper coloring on " + info.id);
      const double recomputed = detail::weighted_sum(g, col->colors());
      if (std::abs(recomputed - col->objective()) > 1e-9 * (1.0 + std::abs(recomputed)))
        throw BenchInvariantFailure(a + " reported objective " + fmt9(col->objective()) + " but its coloring sums to " +
                                    fmt9(recomputed) + " on " + info.id);
      r.objective = recomputed;
      if (lp_value && *lp_value > 0) r.ratio_vs_lp = recomputed / *lp_value;
      if (oracle_value && *oracle_value > 0) r.ratio_vs_oracle = recomputed / *oracle_value;
      for (const auto& ratio : {r.ratio_vs_lp, r.ratio_vs_oracle})
        if (ratio && *ratio < 1.0 - 1e-9)
          throw BenchInvariantFailure(a + " beats a lower bound (ratio " + fmt9(*ratio) + ") on " + info.id);
    } catch (const BenchInvariantFailure&) {
      throw;
    } catch (const std::exception& e) {
      r.status = "error";
      r.error = e.what();
      r.objective.reset();
      r.ratio_vs_lp.reset();
      r.ratio_vs_oracle.reset();
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    normalize(r);
    out.push_back(r);
  }
  return out;
}

struct Aggregate {
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::optional<double> mean_ratio_vs_lp, max_ratio_vs_lp, mean_ratio_vs_oracle, max_ratio_vs_oracle;
};

inline std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records) {
  std::map<std::string, Aggregate> by;
  std::map<std::string, std::pair<double, std::size_t>> lp_sum, or_sum;
  for (const auto& r : records) {
    Aggregate& a = by[r.algorithm];
    a.algorithm = r.algorithm;
    ++a.runs;
    if (r.status != "ok") ++a.failures;
    if (r.ratio_vs_lp) {
      a.max_ratio_vs_lp = std::max(a.max_ratio_vs_lp.value_or(0.0), *r.ratio_vs_lp);
      lp_sum[r.algorithm].first += *r.ratio_vs_lp;
      ++lp_sum[r.algorithm].second;
    }
    if (r.ratio_vs_oracle) {
      a.max_ratio_vs_oracle = std::max(a.max_ratio_vs_oracle.value_or(0.0), *r.ratio_vs_oracle);
      or_sum[r.algorithm].first += *r.ratio_vs_oracle;
      ++or_sum[r.algorithm].second;
    }
  }
  std::vector<Aggregate> out;
  for (auto& [name, a] : by) {
    if (lp_sum[name].second) a.mean_ratio_vs_lp = round9(lp_sum[name].first / lp_sum[name].second);
    if (or_sum[name].second) a.mean_ratio_vs_oracle = round9(or_sum[name].first / or_sum[name].second);
    out.push_back(a);
  }
  return out;
}

inline json to_json(const Aggregate& a) {
  return json{{"algorithm", a.algorithm},
              {"runs", a.runs},
              {"failures", a.failures},
              {"mean_ratio_vs_lp", detail::opt(a.mean_ratio_vs_lp)},
              {"max_ratio_vs_lp", detail::opt(a.max_ratio_vs_lp)},
              {"mean_ratio_vs_oracle", detail::opt(a.mean_ratio_vs_oracle)},
              {"max_ratio_vs_oracle", detail::opt(a.max_ratio_vs_oracle)}};
}

inline json report_json(const std::vector<RunRecord>& records) {
  json rec = json::array(), agg = json::array();
  for (const auto& r : records) rec.push_back(to_json(r));
  for (const auto& a : aggregate(records)) agg.push_back(to_json(a));
  return json{{"rng", kRngName}, {"records", rec}, {"aggregate", agg}};
}

inline void write_table(std::ostream& out, const std::vector<RunRecord>& records) {
  auto cell = [](const std::optional<double>& v) { return v ? fmt9(*v) : std::string("-"); };
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"instance", "n", "m", "algorithm", "objective", "lp", "ratio_lp", "oracle", "ratio_oracle", "ms",
                  "status"});
  for (const auto& r : records)
    rows.push_back({r.instance.id, std::to_string(r.instance.n), std::to_string(r.instance.m), r.algorithm,
                    cell(r.objective), cell(r.lp_value), cell(r.ratio_vs_lp), cell(r.oracle_value),
                    cell(r.ratio_vs_oracle), fmt9(r.wall_ms), r.status == "ok" ? "ok" : "error: " + r.error});
  rows.push_back({});
  rows.push_back({"algorithm", "runs", "failures", "mean_ratio_lp", "max_ratio_lp", "mean_ratio_oracle",
                  "max_ratio_oracle"});
  for (const auto& a : aggregate(records))
    rows.push_back({a.algorithm, std::to_string(a.runs), std::to_string(a.failures), cell(a.mean_ratio_vs_lp),
                    cell(a.max_ratio_vs_lp), cell(a.mean_ratio_vs_oracle), cell(a.max_ratio_vs_oracle)});

  // Widths per table section, separated by the empty row.
  std::size_t start = 0;
  while (start < rows.size()) {
    std::size_t end = start;
    while (end < rows.size() && !rows[end].empty()) ++end;
    std::vector<std::size_t> width;
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], rows[i][c].size());
      }
    for (std::size_t i = start; i < end; ++i) {
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        if (c) out << "  ";
        if (c + 1 == rows[i].size()) out << rows[i][c];
        else out << std::left << std::setw(static_cast<int>(width[c])) << rows[i][c];
      }
      out << '\n';
    }
    if (end < rows.size()) out << '\n';
    start = end + 1;
  }
}

}  // namespace chordsum::bench
