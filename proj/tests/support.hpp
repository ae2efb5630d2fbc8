#pragma once

#include <optional>
#include <algorithm>
#include <random>

#include "netgen/formulation.hpp"
#include "netgen/graph.hpp"
#include "netgen/solver.hpp"
#include "netgen/verify.hpp"

namespace testing_support {

using namespace netgen;

inline Graph from_mask(int n, unsigned mask) {
  Graph g(n);
  int bit = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++bit)
      if (mask & (1u << bit)) g.add_edge(i, j);
  return g;
}

inline Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

inline void fix_edges(MilpModel& m, const VariableRegistry& reg, const Graph& g) {
  for (int i = 1; i <= g.n(); ++i)
    for (int j = i + 1; j <= g.n(); ++j) {
      const double v = g.has_edge(i, j) ? 1.0 : 0.0;
      m.set_bounds(reg.edge(i, j), v, v);
    }
}

// Optimal objective of the formulation with the edges pinned to g, or
// nullopt when that is infeasible.
inline std::optional<double> pinned_optimum(const Formulation& f, const Graph& g, SolveOptions opt = {}) {
  MilpModel m = f.model;
  fix_edges(m, f.registry, g);
  opt.time_limit_s = 120;
  const auto r = solve(m, opt);
  if (r.status == SolveStatus::infeasible) return std::nullopt;
  if (r.status != SolveStatus::optimal) throw Error("pinned solve did not finish");
  return r.objective;
}

// Random spec over n nodes built around a random graph's own values, so a
// fair share of them is attainable. Kinds: degree sequences, clustering
// bands, diameter bands, adn bands, degree bounds.
inline NetworkSpec random_spec(int n, std::mt19937& rng, bool symmetry = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const Graph seed = random_graph(n, 0.3 + 0.4 * unit(rng), rng);
    const auto r = compute_report(seed);
    NetworkSpec s;
    s.n = n;
    auto degs = r.degrees;
    std::sort(degs.rbegin(), degs.rend());
    auto near = [&](double v, double lo, double hi) {
      const double w = 0.15 * unit(rng);
      const double shift = unit(rng) < 0.3 ? 0.3 * (unit(rng) - 0.5) : 0.0;
      return Band{std::clamp(v + shift - w, lo, hi), std::clamp(v + shift + w, lo, hi)};
    };
    if (unit(rng) < 0.5) {
      if (unit(rng) < 0.2) degs[0] = std::min(n - 1, degs[0] + 1);
      std::sort(degs.rbegin(), degs.rend());
      s.constraints.push_back(DegreeSequence{degs});
    } else if (unit(rng) < 0.5) {
      const int lo = std::uniform_int_distribution<int>(0, 2)(rng);
      s.constraints.push_back(DegreeBounds{{}, static_cast<double>(lo),
                                           static_cast<double>(std::min(n - 1, lo + 1 + static_cast<int>(rng() % 3)))});
    }
    if (unit(rng) < 0.5) s.constraints.push_back(ScalarBand{ScalarProperty::avg_cc, near(r.avg_cc, 0, 1)});
    if (unit(rng) < 0.4)
      s.constraints.push_back(ScalarBand{ScalarProperty::global_cc, near(r.global_cc.value_or(0.0), 0, 1)});
    if (unit(rng) < 0.35) {
      const int d = r.diameter ? *r.diameter : 2;
      const int lo = std::max(1, d - static_cast<int>(rng() % 2));
      s.constraints.push_back(ScalarBand{ScalarProperty::diameter, {double(lo), double(std::min(n - 1, d + int(rng() % 2)))}});
    }
    if (unit(rng) < 0.3) {
      AdnByDegree a;
      for (int q = 1; q <= n - 1; ++q)
        if (r.adn[q] && unit(rng) < 0.6) a.bands[q] = near(*r.adn[q], 0, n - 1);
      if (!a.bands.empty()) s.constraints.push_back(a);
    }
    if (s.constraints.empty()) s.constraints.push_back(ScalarBand{ScalarProperty::avg_cc, near(r.avg_cc, 0, 1)});
    if (symmetry) {
      s.symmetry.primary = true;
      if (unit(rng) < 0.5) s.symmetry.secondary = unit(rng) < 0.5 ? SecondaryCriterion::local_cc : SecondaryCriterion::sdn;
    }
    try {
      validate(s);
      build(s);
    } catch (const Error&) {
      continue;
    }
    return s;
  }
}

}  // namespace testing_support
