#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "chordsum/chordal.hpp"
#include "chordsum/gen.hpp"
#include "chordsum/io.hpp"
#include "chordsum/lp/lp_format.hpp"
#include "chordsum/mkcs.hpp"
#include "chordsum/msc.hpp"
#include "chordsum/oracle.hpp"

using namespace chordsum;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
  std::string dump_lp;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string join_one_based(const std::vector<Vertex>& vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i] + 1;
  return os.str();
}

json one_based(const std::vector<Vertex>& vs) {
  json a = json::array();
  for (Vertex v : vs) a.push_back(v + 1);
  return a;
}

json color_map(const std::vector<int>& colors) {
  json m = json::object();
  for (std::size_t v = 0; v < colors.size(); ++v) m[std::to_string(v + 1)] = colors[v];
  return m;
}

void print_colors(const std::vector<int>& colors) {
  std::cout << "colors:";
  for (std::size_t v = 0; v < colors.size(); ++v) std::cout << ' ' << v + 1 << ':' << colors[v];
  std::cout << '\n';
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void dump_lp(const Globals& g, const lp::LinearProgram& prog) {
  if (!g.dump_lp.empty()) lp::write_lp_file(g.dump_lp, prog);
}

int not_chordal(const Globals& gl, const NotChordal& e) {
  if (gl.json) {
    emit(json{{"chordal", false}, {"cycle", one_based(e.cycle())}});
  } else {
    std::cout << "not chordal\ninduced cycle: " << join_one_based(e.cycle()) << '\n';
  }
  return kNegative;
}

int cmd_recognize(const Globals& gl, const std::string& path) {
  WeightedGraph g = io::read_graph_file(path);
  auto r = recognize_chordal(g);
  if (!r.chordal()) return not_chordal(gl, NotChordal(r.cycle()));
  if (gl.json) {
    emit(json{{"chordal", true}, {"peo", one_based(r.peo().order())}, {"clique_number", r.peo().clique_number()}});
  } else {
    std::cout << "chordal\npeo: " << join_one_based(r.peo().order()) << "\nclique number: " << r.peo().clique_number()
              << '\n';
  }
  return kOk;
}

int cmd_mkcs(const Globals& gl, const std::string& path, int k, double epsilon, const std::string& method) {
  if (k < 1) throw UsageError("--k must be at least 1");
  WeightedGraph g = io::read_graph_file(path);
  PerfectEliminationOrder peo = require_chordal(g);
  std::optional<double> lp_objective;
  std::optional<MkcsResult> res;
  if (method == "exact") {
    res = exact_mkcs_dp(g, build_clique_tree(g, peo), k);
  } else if (method == "lp-round") {
    dump_lp(gl, kcolor_lp(g, peo, k));
    KColorLpSolution lp = solve_kcolor_lp(g, peo, k);
    lp_objective = lp.objective;
    res = round_mkcs_derandomized(g, peo, lp, k);
  } else if (method == "ptas") {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw UsageError("--epsilon must lie in (0, 1]");
    res = mkcs_ptas(g, k, epsilon);
  } else if (method == "greedy") {
    res = greedy_max_coverage_mkcs(g, peo, k);
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  if (gl.json) {
    json witness = json::object();
    for (std::size_t i = 0; i < res->selected.size(); ++i) witness[std::to_string(res->selected[i] + 1)] = res->witness[i];
    emit(json{{"method", method},
              {"k", k},
              {"weight", bench::round9(res->weight)},
              {"selected", one_based(res->selected)},
              {"witness", witness},
              {"lp_objective", lp_objective ? json(bench::round9(*lp_objective)) : json(nullptr)}});
  } else {
    std::cout << "weight " << bench::fmt9(res->weight) << "\nselected: " << join_one_based(res->selected) << '\n';
    if (lp_objective) std::cout << "lp objective " << bench::fmt9(*lp_objective) << '\n';
  }
  return kOk;
}

int cmd_msc(const Globals& gl, const std::string& path, double epsilon, const std::string& method,
            std::optional<double> c, bool randomized) {
  WeightedGraph g = io::read_graph_file(path);
  PerfectEliminationOrder peo = require_chordal(g);
  std::optional<Coloring> col;
  std::optional<double> lp_cost;
  std::size_t iterations = 0, columns = 0;
  if (method == "lp") {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
    MscPlan plan = plan_msc(peo, epsilon);
    ConfigLpSolution sol =
        solve_config_lp(g, peo, ptas_mkcs_oracle(g, peo, plan.epsilon_prime), plan.rho, 1.0);
    dump_lp(gl, sol.master);
    const double growth = c ? *c : plan.c;
    if (randomized) {
      Rng rng(gl.seed);
      col = msc_round(g, sol, GeometricSchedule::from_exponent(growth, uniform01(rng)), rng);
    } else {
      col = msc_round_derandomized(g, peo, sol, growth).coloring;
    }
    lp_cost = sol.cost;
    iterations = sol.iterations;
    columns = sol.columns_generated;
  } else if (method == "greedy4") {
    col = greedy_msc_4approx(g, peo);
  } else if (method == "coverage-concat") {
    col = coverage_concat_msc(g, peo, c ? *c : optimal_c(1.0, 1.0).c);
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  std::optional<double> ratio;
  if (lp_cost && *lp_cost > 0) ratio = col->objective() / *lp_cost;
  if (gl.json) {
    emit(json{{"method", method},
              {"objective", bench::round9(col->objective())},
              {"colors", color_map(col->colors())},
              {"lp_cost", lp_cost ? json(bench::round9(*lp_cost)) : json(nullptr)},
              {"bound_ratio_vs_lp", ratio ? json(bench::round9(*ratio)) : json(nullptr)},
              {"iterations", iterations},
              {"columns_generated", columns}});
  } else {
    std::cout << "objective " << bench::fmt9(col->objective()) << '\n';
    print_colors(col->colors());
    if (lp_cost)
      std::cout << "lp cost " << bench::fmt9(*lp_cost) << "\nratio vs lp "
                << (ratio ? bench::fmt9(*ratio) : std::string("-")) << "\niterations " << iterations
                << "\ncolumns generated " << columns << '\n';
  }
  return kOk;
}

int cmd_oracle(const Globals& gl, const std::string& which, const std::string& path, int k) {
  WeightedGraph g = io::read_graph_file(path);
  if (which == "msc") {
    Coloring c = oracle::brute_msc(g);
    if (gl.json) {
      emit(json{{"objective", bench::round9(c.objective())}, {"colors", color_map(c.colors())}});
    } else {
      std::cout << "objective " << bench::fmt9(c.objective()) << '\n';
      print_colors(c.colors());
    }
    return kOk;
  }
  if (k < 1) throw UsageError("--k must be at least 1");
  if (which == "mkcs") {
    MkcsResult r = oracle::brute_mkcs(g, k);
    if (gl.json) emit(json{{"k", k}, {"weight", bench::round9(r.weight)}, {"selected", one_based(r.selected)}});
    else std::cout << "weight " << bench::fmt9(r.weight) << "\nselected: " << join_one_based(r.selected) << '\n';
    return kOk;
  }
  if (which == "kcolor") {
    auto c = oracle::k_coloring(g, k);
    if (gl.json) {
      emit(json{{"k", k}, {"colorable", c.has_value()}, {"coloring", c ? color_map(*c) : json(nullptr)}});
    } else {
      std::cout << (c ? "colorable" : "not colorable") << '\n';
      if (c) print_colors(*c);
    }
    return c ? kOk : kNegative;
  }
  throw UsageError("unknown oracle '" + which + "'");
}

int cmd_gen(const Globals& gl, gen::GenSpec spec, const std::string& out) {
  spec.seed = gl.seed;
  WeightedGraph g = gen::generate(spec);
  json sidecar = bench::gen_spec_to_json(spec);
  sidecar["generator"] = gen::to_string(spec.family);
  sidecar["m"] = g.edge_count();
  if (spec.family == gen::Family::interval) {
    json iv = json::array();
    for (const auto& i : gen::generate_intervals(spec)) iv.push_back({bench::round9(i.left), bench::round9(i.right)});
    sidecar["intervals"] = iv;
  }
  if (out.empty()) {
    io::write_graph(std::cout, g);
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  io::write_graph(f, g);
  std::ofstream side(out + ".json");
  if (!side) throw UsageError("cannot write " + out + ".json");
  side << sidecar.dump(2) << '\n';
  if (!gl.json) std::cout << "wrote " << out << " and " << out << ".json\n";
  else emit(sidecar);
  return kOk;
}

struct BenchArgs {
  std::string specs;
  std::string out;
  std::string algorithms;
  double epsilon = 0.1;
  std::optional<double> c;
  std::string family;
  std::size_t n = 0;
  double param = 1.0;
  std::string weights = "unit";
  int max_weight = 10;
  std::uint64_t seeds = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_bench(const Globals& gl, const BenchArgs& a) {
  std::vector<bench::InstanceSpec> specs;
  if (!a.specs.empty()) {
    std::ifstream f(a.specs);
    if (!f) throw UsageError("cannot read " + a.specs);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw UsageError(std::string("spec set: ") + e.what());
    }
    specs = bench::parse_spec_set(j);
  } else if (!a.family.empty()) {
    gen::GenSpec s;
    s.family = gen::parse_family(a.family);
    s.n = a.n;
    s.param = a.param;
    s.weights = gen::parse_weight_kind(a.weights);
    s.max_weight = a.max_weight;
    for (std::uint64_t t = 0; t < a.seeds; ++t) {
      s.seed = gl.seed + t;
      s.validate();
      specs.push_back({"", s});
    }
  }
  bench::BenchOptions opt;
  if (!a.algorithms.empty()) opt.algorithms = split(a.algorithms, ',');
  for (const auto& name : opt.algorithms)
    if (std::find(bench::known_algorithms().begin(), bench::known_algorithms().end(), name) ==
        bench::known_algorithms().end())
      throw UsageError("unknown algorithm '" + name + "'");
  opt.epsilon = a.epsilon;
  opt.c = a.c;

  std::vector<bench::RunRecord> records;
  for (const auto& s : specs) {
    auto rs = bench::run_instance(s, opt);
    records.insert(records.end(), rs.begin(), rs.end());
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.instance.id, x.algorithm) < std::tie(y.instance.id, y.algorithm);
  });
  json report = bench::report_json(records);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw UsageError("cannot write " + a.out);
    f << report.dump(2) << '\n';
  }
  if (gl.json) emit(report);
  else bench::write_table(std::cout, records);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum coloring and k-colorable subgraphs on chordal graphs"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "Seed for randomized paths and generators");
  app.add_flag("--json", gl.json, "Print JSON instead of text");
  app.add_option("--dump-lp", gl.dump_lp, "Write the final LP in CPLEX LP format");

  std::string path;
  auto* recognize = app.add_subcommand("recognize", "Test chordality; print a PEO or an induced cycle");
  recognize->add_option("graph", path, "Graph file")->required();

  int k = 0;
  double epsilon = 0.5;
  std::string mkcs_method = "ptas";
  auto* mkcs = app.add_subcommand("mkcs", "Maximum k-colorable subgraph");
  mkcs->add_option("graph", path, "Graph file")->required();
  mkcs->add_option("--k", k, "Number of colors")->required();
  mkcs->add_option("--epsilon", epsilon, "Accuracy for the ptas method");
  mkcs->add_option("--method", mkcs_method, "exact | lp-round | ptas | greedy")
      ->check(CLI::IsMember({"exact", "lp-round", "ptas", "greedy"}));

  double msc_epsilon = 0.1;
  std::string msc_method = "lp";
  std::optional<double> c;
  bool randomized = false;
  auto* msc = app.add_subcommand("msc", "Minimum sum coloring");
  msc->add_option("graph", path, "Graph file")->required();
  msc->add_option("--epsilon", msc_epsilon, "Accuracy of the LP method");
  msc->add_option("--method", msc_method, "lp | greedy4 | coverage-concat")
      ->check(CLI::IsMember({"lp", "greedy4", "coverage-concat"}));
  msc->add_option("--c", c, "Growth factor override");
  msc->add_flag("--randomized", randomized, "Random offset and sampling (uses --seed)");

  std::string which;
  int oracle_k = 0;
  auto* orc = app.add_subcommand("oracle", "Exhaustive reference solvers for small graphs");
  orc->add_option("problem", which, "msc | mkcs | kcolor")->required()->check(CLI::IsMember({"msc", "mkcs", "kcolor"}));
  orc->add_option("graph", path, "Graph file")->required();
  orc->add_option("--k", oracle_k, "Number of colors (mkcs, kcolor)");

  std::string family, weights = "unit", out;
  gen::GenSpec spec;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random chordal graph");
  gen_cmd->add_option("--family", family, "ktree | interval | subtree")->required();
  gen_cmd->add_option("--n", spec.n, "Vertex count")->required();
  gen_cmd->add_option("--param", spec.param, "Tree width, interval density, or subtree size");
  gen_cmd->add_option("--weights", weights, "unit | uniform-int | exponential");
  gen_cmd->add_option("--W", spec.max_weight, "Largest weight");
  gen_cmd->add_option("--out", out, "Output graph file; a .json sidecar is written next to it");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over an instance set and tabulate ratios");
  bench_cmd->add_option("--specs", ba.specs, "JSON spec set");
  bench_cmd->add_option("--out", ba.out, "Write the JSON report here");
  bench_cmd->add_option("--algorithms", ba.algorithms, "Comma list of lp, greedy4, coverage-concat");
  bench_cmd->add_option("--epsilon", ba.epsilon, "Accuracy of the LP method");
  bench_cmd->add_option("--c", ba.c, "Growth factor override");
  bench_cmd->add_option("--family", ba.family, "Inline spec: family");
  bench_cmd->add_option("--n", ba.n, "Inline spec: vertex count");
  bench_cmd->add_option("--param", ba.param, "Inline spec: family parameter");
  bench_cmd->add_option("--weights", ba.weights, "Inline spec: weights");
  bench_cmd->add_option("--W", ba.max_weight, "Inline spec: largest weight");
  bench_cmd->add_option("--seeds", ba.seeds, "Inline spec: number of consecutive seeds from --seed");

  for (auto* sub : {recognize, mkcs, msc, orc, gen_cmd, bench_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*recognize) return cmd_recognize(gl, path);
    if (*mkcs) return cmd_mkcs(gl, path, k, epsilon, mkcs_method);
    if (*msc) return cmd_msc(gl, path, msc_epsilon, msc_method, c, randomized);
    if (*orc) return cmd_oracle(gl, which, path, oracle_k);
    if (*gen_cmd) {
      spec.family = gen::parse_family(family);
      spec.weights = gen::parse_weight_kind(weights);
      return cmd_gen(gl, spec, out);
    }
    if (*bench_cmd) return cmd_bench(gl, ba);
  } catch (const NotChordal& e) {
    return not_chordal(gl, e);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const io::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DpTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
