// netgen: build, solve, enumerate, export and verify network specifications.
//
// Exit codes: 0 success / zero deviation, 1 verification failure,
// 2 malformed input, 3 spec unattainable (positive optimal deviation or
// infeasible), 4 time, node or size limit reached.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netgen/formulation.hpp"
#include "netgen/graph.hpp"
#include "netgen/oracle.hpp"
#include "netgen/pipeline.hpp"
#include "netgen/report.hpp"
#include "netgen/solver.hpp"
#include "netgen/spec.hpp"
#include "netgen/verify.hpp"

namespace fs = std::filesystem;
using namespace netgen;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kUnattainable = 3, kLimit = 4 };

struct Flags {
  double time_limit = -1;
  int workers = 0;
  bool deterministic = false;
  bool heuristic = true;
  std::string out_dir = ".";
  std::string format = "edgelist";
  int verbosity = 0;
};

int log_level() {
  const char* env = std::getenv("NETGEN_LOG");
  if (!env) return 0;
  const std::string v = env;
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}

void info(const Flags& f, const std::string& msg) {
  if (f.verbosity >= 1) std::cerr << "[netgen] " << msg << "\n";
}

// Thrown for anything the user has to fix in the input.
struct InputError : Error {
  using Error::Error;
};

NetworkSpec load_spec(const std::string& path, const Flags& f) {
  NetworkSpec s;
  try {
    s = parse_spec(read_file(path));
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
  auto& o = s.solver;
  if (f.time_limit > 0) o.time_limit_s = f.time_limit;
  if (f.workers > 0) {
    o.worker_count = f.workers;
    o.deterministic = f.workers == 1;
  }
  if (f.deterministic) o.deterministic = true;
  o.verbosity = std::max(o.verbosity, f.verbosity);
  return s;
}

Formulation build_or_throw(const NetworkSpec& s, bool binary_flows = true) {
  try {
    return build(s, binary_flows);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

fs::path out_path(const Flags& f, const std::string& name) {
  fs::create_directories(f.out_dir);
  return fs::path(f.out_dir) / name;
}

std::string graph_text(const Graph& g, const std::string& format) {
  return format == "dot" ? to_dot(g) : to_edge_list(g);
}

std::string ext(const std::string& format) { return format == "dot" ? ".dot" : ".edgelist"; }

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Verifies, writes graph files and the report, and maps the outcome to an
// exit code.
int finish_run(const NetworkSpec& spec, const SolveResult& r, const Timings& t, const Flags& f,
               const PipelineInfo* pipeline = nullptr) {
  const bool slack_mode = spec.objective.mode == ObjectiveMode::min_slack;
  const double claimed = slack_mode ? r.total_slack() : 0.0;
  std::vector<GraphVerdict> verdicts;
  for (const auto& g : r.graphs) verdicts.push_back(verify_emitted(g, spec, claimed));
  auto report = run_report_json(spec, r, verdicts, t);
  if (pipeline)
    report["heuristic"] = {{"deviation", detail::opt_json(pipeline->heuristic_slack)},
                           {"start_accepted", pipeline->start_accepted},
                           {"seconds", pipeline->heuristic_s}};
  write_file(out_path(f, "report.json").string(), report.dump(2) + "\n");
  if (!r.graphs.empty()) {
    write_file(out_path(f, "graph.edgelist").string(), to_edge_list(r.graphs[0]));
    write_file(out_path(f, "graph.dot").string(), to_dot(r.graphs[0]));
  }
  std::cout << "status " << to_string(r.status);
  if (r.objective) std::cout << " objective " << *r.objective;
  if (slack_mode && r.has_solution()) std::cout << " total_slack " << claimed;
  std::cout << " nodes " << r.stats.nodes << " time " << t.build_s + t.solve_s << "s\n";
  if (!r.graphs.empty()) std::cout << graph_text(r.graphs[0], f.format);

  for (const auto& v : verdicts)
    if (!v.pass) {
      std::cerr << "error: emitted graph failed independent verification\n";
      return kVerifyFailed;
    }
  switch (r.status) {
    case SolveStatus::limit_reached: return kLimit;
    case SolveStatus::infeasible: return kUnattainable;
    case SolveStatus::optimal: return slack_mode && claimed > spec.solver.abs_gap ? kUnattainable : kOk;
  }
  return kOk;
}

int cmd_solve(const std::string& spec_path, const Flags& f) {
  const auto spec = load_spec(spec_path, f);
  const auto t0 = std::chrono::steady_clock::now();
  const auto form = build_or_throw(spec);
  Timings t;
  t.build_s = seconds_since(t0);
  info(f, "model: " + std::to_string(form.model.num_variables()) + " variables, " +
              std::to_string(form.model.num_constraints()) + " constraints");
  const auto t1 = std::chrono::steady_clock::now();
  SolveResult r;
  PipelineInfo pinfo;
  PipelineOptions popt;
  popt.heuristic = f.heuristic;
  try {
    r = solve_spec(spec, form, spec.solver, popt, &pinfo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLimit;
  }
  t.solve_s = seconds_since(t1);
  return finish_run(spec, r, t, f, &pinfo);
}

json sidecar_json(const NetworkSpec& spec, const Formulation& form, bool relax_flows) {
  json j;
  j["format"] = "netgen-lp-sidecar";
  j["version"] = 1;
  j["spec"] = spec_to_json(spec);
  j["spec_digest"] = spec_digest(spec);
  j["relax_flows"] = relax_flows;
  j["variables"] = form.model.num_variables();
  j["constraints"] = form.model.num_constraints();
  json edges = json::object();
  for (int i = 1; i <= spec.n; ++i)
    for (int k = i + 1; k <= spec.n; ++k) edges[form.model.variable(form.registry.edge(i, k)).name] = {i, k};
  j["edges"] = edges;
  json groups = json::array();
  for (const auto& g : form.registry.slack_groups()) {
    json names = json::array();
    for (VarId v : g.vars) names.push_back(form.model.variable(v).name);
    groups.push_back({{"constraint", g.constraint}, {"variables", names}});
  }
  j["slack_groups"] = groups;
  return j;
}

// Edge values of each candidate start graph, one block per labeling,
// blocks separated by a blank line.
std::string start_blocks(const std::vector<Graph>& graphs, const Formulation& form) {
  std::string out;
  for (const auto& g : graphs) {
    if (!out.empty()) out += "\n";
    for (int i = 1; i <= g.n(); ++i)
      for (int j = i + 1; j <= g.n(); ++j)
        out += form.model.variable(form.registry.edge(i, j)).name + (g.has_edge(i, j) ? " 1\n" : " 0\n");
  }
  return out;
}

int cmd_export(const std::string& spec_path, std::string lp_path, bool relax_flows, bool start, const Flags& f) {
  const auto spec = load_spec(spec_path, f);
  const auto form = build_or_throw(spec, !relax_flows);
  if (lp_path.empty()) lp_path = out_path(f, "model.lp").string();
  write_file(lp_path, write_lp_format(form.model));
  write_file(lp_path + ".json", sidecar_json(spec, form, relax_flows).dump(2) + "\n");
  std::cout << "wrote " << lp_path << " (" << form.model.num_variables() << " variables, "
            << form.model.num_constraints() << " constraints)\n";
  if (start) {
    std::optional<double> slack;
    const auto graphs = start_candidates(spec, spec.solver, HeuristicOptions{}, &slack);
    write_file(lp_path + ".start", start_blocks(graphs, form));
    if (slack)
      std::cout << "wrote " << lp_path << ".start (" << graphs.size() << " labelings, deviation " << *slack << ")\n";
    else
      std::cout << "wrote " << lp_path << ".start (empty, heuristic found nothing)\n";
  }
  return kOk;
}

int cmd_import(const std::string& sidecar_path, const std::string& solution_path, const Flags& f) {
  json side;
  try {
    side = json::parse(read_file(sidecar_path));
  } catch (const json::exception& e) {
    throw InputError(sidecar_path + ": " + e.what());
  }
  if (side.value("format", "") != "netgen-lp-sidecar") throw InputError(sidecar_path + ": not an export sidecar");
  NetworkSpec spec;
  try {
    spec = spec_from_json(side.at("spec"));
  } catch (const std::exception& e) {
    throw InputError(sidecar_path + ": " + e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto form = build_or_throw(spec, !side.value("relax_flows", false));
  if (form.model.num_variables() != side.value("variables", std::size_t{0}) ||
      form.model.num_constraints() != side.value("constraints", std::size_t{0}))
    throw InputError("sidecar does not match the model rebuilt from its spec");
  Timings t;
  t.build_s = seconds_since(t0);
  SolveResult r;
  try {
    r = import_solution(form.model, form.registry, read_file(solution_path));
  } catch (const Error& e) {
    std::cerr << "error: rejected solution: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return finish_run(spec, r, t, f);
}

int cmd_enumerate(const std::string& spec_path, std::size_t k, const Flags& f) {
  const auto spec = load_spec(spec_path, f);
  const auto form = build_or_throw(spec);
  const auto out = enumerate_nonisomorphic(form.model, form.registry, k, spec.solver,
                                           [&](const Graph& h) { return check_spec(h, spec, 1e-6).pass; });
  json j;
  j["spec"] = spec_to_json(spec);
  j["requested"] = k;
  j["found"] = out.graphs.size();
  j["unattainable"] = out.unattainable;
  j["last_status"] = to_string(out.last_status);
  j["solves"] = out.solves;
  json files = json::array();
  for (std::size_t i = 0; i < out.graphs.size(); ++i) {
    if (!check_spec(out.graphs[i], spec, 1e-6).pass) {
      std::cerr << "error: enumerated graph failed independent verification\n";
      return kVerifyFailed;
    }
    char name[32];
    std::snprintf(name, sizeof name, "graph_%03zu", i + 1);
    const auto path = out_path(f, name + ext(f.format));
    write_file(path.string(), graph_text(out.graphs[i], f.format));
    files.push_back(path.filename().string());
  }
  j["files"] = files;
  write_file(out_path(f, "enumerate.json").string(), j.dump(2) + "\n");
  std::cout << "found " << out.graphs.size() << " non-isomorphic graphs\n";
  if (out.unattainable) return kUnattainable;
  if (out.last_status == SolveStatus::limit_reached) return kLimit;
  return kOk;
}

int cmd_oracle(const std::string& spec_path, const Flags& f) {
  const auto spec = load_spec(spec_path, f);
  if (spec.n > kOracleMaxNodes)
    throw InputError("oracle enumeration is limited to n <= " + std::to_string(kOracleMaxNodes));
  const auto rep = oracle_report(spec);
  write_file(out_path(f, "oracle.json").string(), to_json(rep).dump(2) + "\n");
  std::cout << "labeled feasible " << rep.labeled_feasible << ", classes " << rep.feasible_keys.size();
  if (rep.min_slack) std::cout << ", least deviation " << *rep.min_slack;
  if (rep.optimum) std::cout << ", optimum " << rep.optimum->value;
  std::cout << "\n";
  return kOk;
}

int cmd_verify(const std::string& graph_path, const std::string& spec_path, const Flags& f) {
  const auto spec = load_spec(spec_path, f);
  Graph g;
  try {
    g = parse_graph(read_file(graph_path));
  } catch (const Error& e) {
    throw InputError(graph_path + ": " + e.what());
  }
  if (g.n() != spec.n) throw InputError("graph has " + std::to_string(g.n()) + " nodes, spec expects " +
                                        std::to_string(spec.n));
  const auto check = check_spec(g, spec, 1e-6);
  for (const auto& c : check.items)
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  std::cout << (check.pass ? "pass" : "fail") << "\n";
  return check.pass ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate networks with prescribed properties by mixed-integer programming"};
  app.require_subcommand(1);
  Flags flags;
  flags.verbosity = log_level();
  app.add_option("--time-limit", flags.time_limit, "Solver time limit in seconds");
  app.add_option("--workers", flags.workers, "Branch-and-bound worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--seedless-deterministic", flags.deterministic, "Reproducible single-worker search");
  app.add_flag("!--no-heuristic", flags.heuristic, "Skip the graph-space start heuristic");
  app.add_option("--out-dir", flags.out_dir, "Directory for written files");
  app.add_option("--format", flags.format, "Graph file format")->check(CLI::IsMember({"edgelist", "dot"}));
  app.fallthrough();

  std::string spec_path, graph_path, lp_path, solution_path;
  std::size_t k = 10;
  bool relax_flows = false;
  bool export_start = false;

  auto* solve_cmd = app.add_subcommand("solve", "Solve a spec and write the graph and a report");
  solve_cmd->add_option("spec", spec_path, "Spec file (JSON)")->required();
  auto* export_cmd = app.add_subcommand("export", "Write the model as an LP file plus a sidecar for import");
  export_cmd->add_option("spec", spec_path, "Spec file (JSON)")->required();
  export_cmd->add_option("-o,--output", lp_path, "LP file path (default <out-dir>/model.lp)");
  export_cmd->add_flag("--relax-flows", relax_flows, "Make path flow variables continuous");
  export_cmd->add_flag("--start", export_start, "Also write <lp>.start with heuristic edge values");
  auto* import_cmd = app.add_subcommand("import", "Verify an external solution against an exported model");
  import_cmd->add_option("sidecar", spec_path, "Sidecar written by export (<model>.lp.json)")->required();
  import_cmd->add_option("solution", solution_path, "Solution file: one 'name value' per line")->required();
  auto* enum_cmd = app.add_subcommand("enumerate", "Find up to k non-isomorphic zero-deviation graphs");
  enum_cmd->add_option("spec", spec_path, "Spec file (JSON)")->required();
  enum_cmd->add_option("-k", k, "Number of graphs")->check(CLI::PositiveNumber);
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force all labeled graphs (n <= 6)");
  oracle_cmd->add_option("spec", spec_path, "Spec file (JSON)")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Check a graph file against a spec");
  verify_cmd->add_option("graph", graph_path, "Edge list or DOT file")->required();
  verify_cmd->add_option("spec", spec_path, "Spec file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(spec_path, flags);
    if (*export_cmd) return cmd_export(spec_path, lp_path, relax_flows, export_start, flags);
    if (*import_cmd) return cmd_import(spec_path, solution_path, flags);
    if (*enum_cmd) return cmd_enumerate(spec_path, k, flags);
    if (*oracle_cmd) return cmd_oracle(spec_path, flags);
    if (*verify_cmd) return cmd_verify(graph_path, spec_path, flags);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
