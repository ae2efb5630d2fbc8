#pragma once

// JSON reports written by the command-line tool.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "netgen/graph.hpp"
#include "netgen/solver.hpp"
#include "netgen/spec.hpp"
#include "netgen/verify.hpp"

namespace netgen {

namespace detail {
template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace detail

inline nlohmann::json properties_json(const Graph& g) {
  const auto r = compute_report(g);
  using detail::opt_json;
  nlohmann::json j;
  j["n"] = r.n;
  j["edges"] = g.edges();
  j["degrees"] = r.degrees;
  j["avg_cc"] = r.avg_cc;
  j["global_cc"] = opt_json(r.global_cc);
  j["connected"] = r.connected;
  j["diameter"] = opt_json(r.diameter);
  j["apl"] = opt_json(r.apl);
  j["cpl"] = r.cpl ? nlohmann::json::array({r.cpl->lo, r.cpl->hi}) : nlohmann::json(nullptr);
  auto& lc = j["local_cc"] = nlohmann::json::array();
  for (const auto& v : r.local_cc) lc.push_back(opt_json(v));
  auto& cl = j["closeness"] = nlohmann::json::array();
  for (const auto& v : r.closeness) cl.push_back(opt_json(v));
  auto& adn = j["adn"] = nlohmann::json::object();
  for (std::size_t q = 0; q < r.adn.size(); ++q)
    if (r.adn[q]) adn[std::to_string(q)] = *r.adn[q];
  return j;
}

struct GraphVerdict {
  bool pass = false;  // the graph meets the spec, or its deviation matches the solver's
  CheckReport check;
  std::optional<double> slack;
};

// Re-checks an emitted graph independently of the model. claimed_slack is the
// solver's total deviation (0 for hard-constraint runs).
inline GraphVerdict verify_emitted(const Graph& g, const NetworkSpec& spec, double claimed_slack,
                                   double tol = 1e-6) {
  GraphVerdict v;
  v.check = check_spec(g, spec, tol);
  v.slack = spec_slack(g, spec);
  if (claimed_slack <= tol)
    v.pass = v.check.pass;
  else
    v.pass = v.slack && std::abs(*v.slack - claimed_slack) <= 1e-5 * std::max(1.0, claimed_slack);
  return v;
}

inline nlohmann::json verdict_json(const GraphVerdict& v) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : v.check.items) items.push_back({{"constraint", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", v.pass}, {"spec_satisfied", v.check.pass}, {"deviation", detail::opt_json(v.slack)}, {"checks", items}};
}

struct Timings {
  double build_s = 0.0;
  double solve_s = 0.0;
};

inline nlohmann::json run_report_json(const NetworkSpec& spec, const SolveResult& r,
                                      const std::vector<GraphVerdict>& verdicts, const Timings& t) {
  nlohmann::json j;
  j["spec"] = spec_to_json(spec);
  j["status"] = to_string(r.status);
  j["objective"] = detail::opt_json(r.objective);
  j["best_bound"] = std::isfinite(r.best_bound) ? nlohmann::json(r.best_bound) : nlohmann::json(nullptr);
  auto& table = j["slack_table"] = nlohmann::json::array();
  double total = 0.0;
  for (const auto& e : r.slack_report) {
    table.push_back({{"constraint", e.constraint}, {"deviation", e.deviation}});
    total += e.deviation;
  }
  j["total_slack"] = total;
  auto& graphs = j["graphs"] = nlohmann::json::array();
  for (std::size_t k = 0; k < r.graphs.size(); ++k) {
    auto gj = properties_json(r.graphs[k]);
    if (k < verdicts.size()) gj["verification"] = verdict_json(verdicts[k]);
    graphs.push_back(std::move(gj));
  }
  j["timings"] = {{"build_s", t.build_s}, {"solve_s", t.solve_s}, {"total_s", t.build_s + t.solve_s}};
  j["stats"] = {{"nodes", r.stats.nodes},
                {"simplex_iterations", r.stats.simplex_iterations},
                {"numerical_failures", r.stats.numerical_failures}};
  return j;
}

}  // namespace netgen
