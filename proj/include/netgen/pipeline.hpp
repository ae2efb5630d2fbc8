#pragma once

// Spec-level solve: optional graph-space heuristic, pinned into the model to
// get a full assignment, then branch and bound from that incumbent.

#include <algorithm>
#include <chrono>
#include <optional>
#include <vector>

#include "netgen/formulation.hpp"
#include "netgen/heuristic.hpp"
#include "netgen/solver.hpp"
#include "netgen/spec.hpp"

namespace netgen {

struct PipelineOptions {
  bool heuristic = true;
  HeuristicOptions search;
  double pin_time_limit_s = 60.0;  // per relabeling
};

struct PipelineInfo {
  std::optional<double> heuristic_slack;  // deviation of the heuristic's graph
  bool start_accepted = false;            // its assignment seeded the search
  double heuristic_s = 0.0;
};

// Full model assignment for a fixed graph: edge variables pinned, everything
// else solved for. Empty when the model rejects this labeling.
inline std::optional<std::vector<double>> pinned_assignment(const Formulation& f, const Graph& g,
                                                            const SolveOptions& opt) {
  MilpModel m = f.model;
  for (int i = 1; i <= g.n(); ++i)
    for (int j = i + 1; j <= g.n(); ++j) {
      const double v = g.has_edge(i, j) ? 1.0 : 0.0;
      m.set_bounds(f.registry.edge(i, j), v, v);
    }
  const auto r = solve(m, opt);
  if (r.status != SolveStatus::optimal) return std::nullopt;
  return r.values;
}

// Heuristic graph in every labeling that can meet the symmetry rows. Empty
// when the search finds nothing with finite deviation.
inline std::vector<Graph> start_candidates(const NetworkSpec& spec, const SolveOptions& opt, HeuristicOptions h,
                                           std::optional<double>* slack = nullptr) {
  if (opt.time_limit_s > 0) h.time_limit_s = std::min(h.time_limit_s, 0.25 * opt.time_limit_s);
  // Reproducible runs stop on the evaluation count, never on the clock.
  if (opt.deterministic) h.time_limit_s = kInf;
  const auto found = search_graph(spec, h);
  if (!found) return {};
  if (slack) *slack = found->slack;
  return symmetry_relabelings(found->graph, spec);
}

inline SolveResult solve_spec(const NetworkSpec& spec, const Formulation& f, const SolveOptions& opt,
                              const PipelineOptions& popt = {}, PipelineInfo* info = nullptr) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  PipelineInfo local;
  std::optional<std::vector<double>> start;

  if (popt.heuristic) {
    for (const auto& g : start_candidates(spec, opt, popt.search, &local.heuristic_slack)) {
      SolveOptions pin = opt;
      pin.time_limit_s = popt.pin_time_limit_s;
      if (opt.time_limit_s > 0) pin.time_limit_s = std::min(pin.time_limit_s, opt.time_limit_s - elapsed());
      if (pin.time_limit_s <= 0) break;
      pin.verbosity = 0;
      if ((start = pinned_assignment(f, g, pin))) break;
    }
    local.heuristic_s = elapsed();
  }

  SolveOptions rest = opt;
  if (opt.time_limit_s > 0) rest.time_limit_s = std::max(1.0, opt.time_limit_s - elapsed());
  detail::BranchAndBound bb(f.model, rest, kInf, start ? &*start : nullptr);
  local.start_accepted = bb.start_accepted();
  if (opt.verbosity >= 1 && local.heuristic_slack)
    std::cerr << "[netgen] heuristic deviation " << *local.heuristic_slack
              << (local.start_accepted ? " (accepted as incumbent)" : " (not usable)") << "\n";
  bb.run();
  auto r = bb.result();
  r.stats.wall_seconds = elapsed();
  fill_graph_report(r, f.registry);
  if (info) *info = local;
  return r;
}

}  // namespace netgen
