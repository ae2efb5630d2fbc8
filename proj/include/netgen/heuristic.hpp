#pragma once

// Primal heuristic in graph space: simulated annealing over labeled graphs
// scored by the spec's own deviation, then relabeling so the result satisfies
// the model's symmetry-breaking order. Anything it finds is only a candidate;
// the caller pins it into the model and the solver checks it row by row.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "netgen/graph.hpp"
#include "netgen/spec.hpp"
#include "netgen/verify.hpp"

namespace netgen {

struct HeuristicOptions {
  double time_limit_s = 20.0;
  long max_evaluations = 250'000;
  std::uint64_t seed = 1;
};

struct HeuristicResult {
  Graph graph;
  double slack = 0.0;
  std::optional<double> objective;  // set when the spec optimises a property
  long evaluations = 0;
};

namespace detail {

// Graph on nodes 1..n where node i gets degree d[i-1], if one exists.
inline std::optional<Graph> havel_hakimi(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  Graph g(n);
  std::vector<int> left = d;
  for (;;) {
    int v = -1;
    for (int i = 0; i < n; ++i)
      if (left[i] > 0 && (v < 0 || left[i] > left[v])) v = i;
    if (v < 0) return g;
    std::vector<int> cand;
    for (int i = 0; i < n; ++i)
      if (i != v && left[i] > 0 && !g.has_edge(v + 1, i + 1)) cand.push_back(i);
    if (static_cast<int>(cand.size()) < left[v]) return std::nullopt;
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return left[a] > left[b]; });
    for (int k = 0; k < left[v]; ++k) {
      g.add_edge(v + 1, cand[k] + 1);
      --left[cand[k]];
    }
    left[v] = 0;
  }
}

inline std::optional<double> heuristic_objective(const Graph& g, const NetworkSpec& s) {
  if (s.objective.mode == ObjectiveMode::min_slack) return std::nullopt;
  const auto r = compute_report(g);
  const auto* degseq = s.find<DegreeSequence>();
  switch (s.objective.property) {
    case ScalarProperty::avg_cc:
      if (degseq) {
        double acc = 0.0;
        for (int i = 0; i < s.n; ++i) {
          const double d = degseq->values[i];
          if (d >= 2) acc += r.triangles[i] / (d * (d - 1) / 2.0);
        }
        return acc / s.n;
      }
      return r.avg_cc;
    case ScalarProperty::global_cc: return r.global_cc;
    case ScalarProperty::apl: return r.apl;
    default: return std::nullopt;
  }
}

}  // namespace detail

// Searches for a zero-deviation graph (or, for optimisation specs, a good
// feasible one). Returns the best graph with finite deviation.
inline std::optional<HeuristicResult> search_graph(const NetworkSpec& spec, const HeuristicOptions& opt = {}) {
  using Clock = std::chrono::steady_clock;
  const auto deadline = std::isfinite(opt.time_limit_s)
                            ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                 std::chrono::duration<double>(opt.time_limit_s))
                            : Clock::time_point::max();
  const int n = spec.n;
  if (n < 2) return std::nullopt;
  const bool optimise = spec.objective.mode != ObjectiveMode::min_slack;
  const double dir = spec.objective.mode == ObjectiveMode::maximize ? -1.0 : 1.0;
  std::mt19937_64 rng(opt.seed);

  const auto* degseq = spec.find<DegreeSequence>();
  std::optional<Graph> start;
  if (degseq) start = detail::havel_hakimi(degseq->values);
  const bool swaps = start.has_value();
  if (!start) start = Graph(n);

  long evals = 0;
  // Lower is better. Hard failures (disconnected, empty) rank behind any
  // finite deviation; optimisation specs trade the objective behind slack.
  auto score = [&](const Graph& g) {
    ++evals;
    const auto s = spec_slack(g, spec);
    if (!s) return 1e9 + static_cast<double>(std::max(0L, static_cast<long>(n) - static_cast<long>(g.num_edges())));
    double v = *s * 1e3;
    if (optimise)
      if (auto o = detail::heuristic_objective(g, spec)) v += dir * *o;
    return v;
  };

  std::uniform_int_distribution<int> node(1, n);
  auto random_move = [&](Graph& g) -> bool {
    if (!swaps) {
      int a = node(rng), b = node(rng);
      if (a == b) return false;
      g.set_edge(a, b, !g.has_edge(a, b));
      return true;
    }
    const auto edges = g.edges();
    if (edges.size() < 2) return false;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    auto [a, b] = edges[pick(rng)];
    auto [c, d] = edges[pick(rng)];
    if (rng() & 1) std::swap(c, d);
    if (a == c || a == d || b == c || b == d) return false;
    if (g.has_edge(a, c) || g.has_edge(b, d)) return false;
    g.set_edge(a, b, false);
    g.set_edge(c, d, false);
    g.set_edge(a, c, true);
    g.set_edge(b, d, true);
    return true;
  };

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Fresh starting point: a scrambled copy of the start (swaps keep the
  // degrees) or a random graph of random density.
  auto restart = [&]() {
    Graph g = *start;
    if (swaps) {
      for (int k = 0; k < 10 * n; ++k) random_move(g);
      return g;
    }
    const double p = 0.1 + 0.6 * unit(rng);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) g.set_edge(i, j, unit(rng) < p);
    return g;
  };

  Graph cur = *start;
  double cur_s = score(cur);
  Graph best = cur;
  double best_s = cur_s;
  const double target = optimise ? -kInf : 1e-9;

  // Temperature scale from the typical uphill step between finite scores.
  double t0 = 0.0;
  int ups = 0;
  for (int k = 0; k < 400 && ups < 100; ++k) {
    Graph a = k % 20 == 0 || k == 0 ? restart() : cur;
    const double sa = score(a);
    Graph b = a;
    if (!random_move(b)) continue;
    const double d = score(b) - sa;
    if (sa < 1e8 && d > 0 && d < 1e8) {
      t0 += d;
      ++ups;
    }
    cur = std::move(a);
  }
  t0 = ups ? t0 / ups : 1.0;
  cur = best;
  cur_s = best_s;

  const long round = 20000;
  long rounds = 0;
  while (best_s > target && evals < opt.max_evaluations && Clock::now() < deadline) {
    if (++rounds % 2 == 0) {
      cur = restart();
      cur_s = score(cur);
    }
    for (long it = 0; it < round && best_s > target; ++it) {
      const double temp = t0 * std::pow(1e-3, static_cast<double>(it) / round);
      Graph g = cur;
      if (!random_move(g)) continue;
      const double s = score(g);
      if (s <= cur_s || unit(rng) < std::exp((cur_s - s) / temp)) {
        cur = std::move(g);
        cur_s = s;
        if (cur_s < best_s) {
          best = cur;
          best_s = cur_s;
        }
      }
      if ((it & 1023) == 0 && Clock::now() >= deadline) break;
    }
    cur = best;
    cur_s = best_s;
  }

  const auto slack = spec_slack(best, spec);
  if (!slack) return std::nullopt;
  HeuristicResult out{best, *slack, detail::heuristic_objective(best, spec), evals};
  return out;
}

// Relabelings of g that can satisfy the symmetry-breaking rows: non-increasing
// degree (or the fixed sequence's runs), ties by the secondary criterion.
inline std::vector<Graph> symmetry_relabelings(const Graph& g, const NetworkSpec& spec) {
  const int n = g.n();
  const auto& cfg = spec.symmetry;
  const auto* degseq = spec.find<DegreeSequence>();
  if (!cfg.primary && cfg.secondary == SecondaryCriterion::none) return {g};
  const auto r = compute_report(g);

  auto relabel = [&](const std::vector<int>& order) {  // order[k] = old node placed at k+1
    std::vector<int> to(n + 1);
    for (int k = 0; k < n; ++k) to[order[k]] = k + 1;
    Graph h(n);
    for (auto [a, b] : g.edges()) h.add_edge(to[a], to[b]);
    return h;
  };

  // Secondary value per old node, larger first (inverse closeness: smaller first).
  auto ordered = [&](std::optional<int> last) {
    std::vector<double> key(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
      switch (cfg.secondary) {
        case SecondaryCriterion::local_cc: key[i] = r.local_cc[i - 1].value_or(0.0); break;
        case SecondaryCriterion::sdn: key[i] = static_cast<double>(r.sdn[i - 1]); break;
        case SecondaryCriterion::inverse_closeness:
          key[i] = r.connected ? -detail::inverse_closeness(r, i - 1) : 0.0;
          break;
        case SecondaryCriterion::dist_to_last:
          key[i] = last && r.dist[i - 1][*last - 1] != kUnreachable ? r.dist[i - 1][*last - 1] : 0.0;
          break;
        case SecondaryCriterion::none: break;
      }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 1);
    if (degseq) {
      // Degrees are tied to positions; only reorder within equal-degree runs.
      for (int a = 0; a < n;) {
        int b = a;
        while (b + 1 < n && degseq->values[b + 1] == degseq->values[a]) ++b;
        std::vector<int> run(order.begin() + a, order.begin() + b + 1);
        if (last && std::find(run.begin(), run.end(), *last) != run.end()) {
          run.erase(std::find(run.begin(), run.end(), *last));
          std::stable_sort(run.begin(), run.end(), [&](int x, int y) { return key[x] > key[y]; });
          run.push_back(*last);
        } else {
          std::stable_sort(run.begin(), run.end(), [&](int x, int y) { return key[x] > key[y]; });
        }
        std::copy(run.begin(), run.end(), order.begin() + a);
        a = b + 1;
      }
    } else {
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (last && (x == *last || y == *last)) return y == *last && x != *last;
        if (r.degrees[x - 1] != r.degrees[y - 1]) return r.degrees[x - 1] > r.degrees[y - 1];
        return key[x] > key[y];
      });
    }
    return relabel(order);
  };

  if (cfg.secondary != SecondaryCriterion::dist_to_last) return {ordered(std::nullopt)};
  // The last node is part of the choice: try every node that can sit last.
  std::vector<Graph> out;
  const int last_degree = degseq ? degseq->values.back() : *std::min_element(r.degrees.begin(), r.degrees.end());
  for (int i = 1; i <= n; ++i)
    if (r.degrees[i - 1] == last_degree && (!degseq || degseq->values[i - 1] == last_degree))
      out.push_back(ordered(i));
  return out;
}

}  // namespace netgen
