#pragma once

// Independent evaluation of a NetworkSpec on a concrete graph. check_spec is
// the pass/fail verifier; spec_slack reproduces the total deviation that the
// min-slack formulation assigns to a graph, computed from graph properties
// alone. Neither touches the MILP model.

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netgen/graph.hpp"
#include "netgen/spec.hpp"

namespace netgen {

struct ConstraintCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  bool pass = true;
  std::vector<ConstraintCheck> items;
};

inline double band_distance(double v, const Band& b) {
  if (v < b.lo) return b.lo - v;
  if (v > b.hi) return v - b.hi;
  return 0.0;
}

inline double interval_distance(const Interval& iv, const Band& b) {
  return std::max({0.0, b.lo - iv.hi, iv.lo - b.hi});
}

// True when the formulation treats degrees as the given fixed sequence.
inline bool uses_fixed_degrees(const NetworkSpec& s) { return s.find<DegreeSequence>() != nullptr; }

// Whether any specification or symmetry choice encodes shortest paths, which
// restricts the search to connected graphs.
inline bool requires_connectivity(const NetworkSpec& s) {
  for (const auto& c : s.constraints) {
    if (std::holds_alternative<ClosenessSequence>(c)) return true;
    if (auto b = std::get_if<ScalarBand>(&c)) {
      if (b->property == ScalarProperty::apl || b->property == ScalarProperty::cpl ||
          b->property == ScalarProperty::diameter)
        return true;
    }
  }
  if (s.objective.mode != ObjectiveMode::min_slack &&
      (s.objective.property == ScalarProperty::apl || s.objective.property == ScalarProperty::cpl))
    return true;
  return false;
}

// Global degree range used by degree-class encodings: the all-node degree
// bounds when present, otherwise [0, n-1].
inline std::pair<int, int> degree_range(const NetworkSpec& s) {
  for (const auto& c : s.constraints)
    if (auto d = std::get_if<DegreeBounds>(&c); d && d->nodes.empty())
      return {static_cast<int>(std::ceil(d->lo - 1e-9)), static_cast<int>(std::floor(d->hi + 1e-9))};
  return {0, s.n - 1};
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Kuhn's augmenting-path matching; ok[i][m] says node i may take band m.
inline bool has_perfect_matching(const std::vector<std::vector<bool>>& ok) {
  const std::size_t n = ok.size();
  std::vector<int> owner(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i,
                                                                      std::vector<bool>& seen) {
    for (std::size_t m = 0; m < n; ++m) {
      if (!ok[i][m] || seen[m]) continue;
      seen[m] = true;
      if (owner[m] < 0 || augment(static_cast<std::size_t>(owner[m]), seen)) {
        owner[m] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

// Exact minimum-cost assignment by dynamic programming over subsets.
inline double min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n > 20) throw Error("assignment oracle limited to 20 nodes");
  std::vector<double> dp(std::size_t{1} << n, kInf);
  dp[0] = 0.0;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == kInf) continue;
    const std::size_t i = static_cast<std::size_t>(std::popcount(mask));
    if (i >= n) continue;
    for (std::size_t m = 0; m < n; ++m) {
      if (mask & (std::size_t{1} << m)) continue;
      auto& slot = dp[mask | (std::size_t{1} << m)];
      slot = std::min(slot, dp[mask] + cost[i][m]);
    }
  }
  return dp.back();
}

inline double inverse_closeness(const PropertyReport& r, int i) {
  long s = 0;
  for (int j = 0; j < r.n; ++j) s += r.dist[i][j];
  return static_cast<double>(s) / (r.n - 1);
}

inline Band inverse_band(const Band& clc) { return {1.0 / clc.hi, 1.0 / clc.lo}; }

}  // namespace detail

inline CheckReport check_spec(const Graph& g, const NetworkSpec& s, double tol = 1e-9) {
  if (g.n() != s.n) throw Error("spec node count does not match graph");
  const auto r = compute_report(g);
  CheckReport out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.items.push_back({std::move(name), pass, std::move(detail)});
    out.pass = out.pass && pass;
  };
  auto in_band = [&](double v, const Band& b) { return v >= b.lo - tol && v <= b.hi + tol; };

  for (const auto& c : s.constraints) {
    const std::string name = describe(c);
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DegreeBounds>) {
            bool ok = true;
            std::string bad;
            for (int i = 1; i <= s.n; ++i) {
              if (!v.nodes.empty() && std::find(v.nodes.begin(), v.nodes.end(), i) == v.nodes.end())
                continue;
              if (!in_band(r.degrees[i - 1], {v.lo, v.hi})) {
                ok = false;
                bad += " node " + std::to_string(i) + "=" + std::to_string(r.degrees[i - 1]);
              }
            }
            add(name, ok, ok ? "all degrees in band" : "out of band:" + bad);
          } else if constexpr (std::is_same_v<T, DegreeSequence>) {
            bool ok = true;
            for (int i = 0; i < s.n; ++i) ok = ok && r.degrees[i] == v.values[i];
            add(name, ok, ok ? "matches" : "degrees differ");
          } else if constexpr (std::is_same_v<T, ScalarBand>) {
            std::optional<double> value;
            switch (v.property) {
              case ScalarProperty::avg_cc: value = r.avg_cc; break;
              case ScalarProperty::global_cc: value = r.global_cc; break;
              case ScalarProperty::apl: value = r.apl; break;
              case ScalarProperty::diameter:
                if (r.diameter) value = *r.diameter;
                break;
              case ScalarProperty::cpl:
                if (r.cpl) {
                  const bool ok = interval_distance(*r.cpl, v.band) <= tol;
                  add(name, ok, "cpl in [" + detail::fmt(r.cpl->lo) + ", " + detail::fmt(r.cpl->hi) + "]");
                  return;
                }
                break;
            }
            if (!value) {
              add(name, false, "undefined");
              return;
            }
            add(name, in_band(*value, v.band), name + " = " + detail::fmt(*value));
          } else if constexpr (std::is_same_v<T, ClosenessSequence>) {
            if (!r.connected) {
              add(name, false, "undefined");
              return;
            }
            std::vector<std::vector<bool>> ok(s.n, std::vector<bool>(s.n));
            for (int i = 0; i < s.n; ++i)
              for (int m = 0; m < s.n; ++m) ok[i][m] = in_band(*r.closeness[i], v.bands[m]);
            const bool pass = detail::has_perfect_matching(ok);
            add(name, pass, pass ? "one-to-one band assignment exists" : "no band assignment");
          } else if constexpr (std::is_same_v<T, AdnByDegree>) {
            bool ok = true;
            std::string det;
            for (const auto& [q, b] : v.bands) {
              if (q >= s.n || !r.adn[q]) continue;
              if (!in_band(*r.adn[q], b)) {
                ok = false;
                det += " adn[" + std::to_string(q) + "]=" + detail::fmt(*r.adn[q]);
              }
            }
            add(name, ok, ok ? "sampled classes in band" : "out of band:" + det);
          } else if constexpr (std::is_same_v<T, MinDegreeSpan>) {
            auto [lo, hi] = std::minmax_element(r.degrees.begin(), r.degrees.end());
            add(name, *hi - *lo >= v.span, "span " + std::to_string(*hi - *lo));
          } else {
            add(name, g.num_edges() >= 1, std::to_string(g.num_edges()) + " edges");
          }
        },
        c);
  }
  return out;
}

// Total deviation the min-slack formulation assigns to this labeled graph, or
// nullopt when the formulation excludes the graph outright (hard constraints,
// connectivity implied by shortest-path encodings).
inline std::optional<double> spec_slack(const Graph& g, const NetworkSpec& s) {
  const auto r = compute_report(g);
  const int n = s.n;
  if (requires_connectivity(s) && !r.connected) return std::nullopt;
  const auto* degseq = s.find<DegreeSequence>();
  const bool fixed = degseq != nullptr;
  auto target_deg = [&](int i) { return degseq->values[i]; };
  auto choose2 = [](long d) { return d * (d - 1) / 2.0; };

  if (s.find<AdnByDegree>()) {
    auto [dl, du] = degree_range(s);
    for (int d : r.degrees)
      if (d < dl || d > du) return std::nullopt;
  }

  double total = 0.0;
  for (const auto& c : s.constraints) {
    if (auto d = std::get_if<DegreeBounds>(&c)) {
      for (int i = 1; i <= n; ++i) {
        if (!d->nodes.empty() && std::find(d->nodes.begin(), d->nodes.end(), i) == d->nodes.end())
          continue;
        total += band_distance(r.degrees[i - 1], {d->lo, d->hi});
      }
    } else if (auto d = std::get_if<DegreeSequence>(&c)) {
      for (int i = 0; i < n; ++i) total += std::abs(r.degrees[i] - d->values[i]);
    } else if (auto b = std::get_if<ScalarBand>(&c)) {
      switch (b->property) {
        case ScalarProperty::avg_cc: {
          double acc = r.avg_cc;
          if (fixed) {
            acc = 0.0;
            for (int i = 0; i < n; ++i) acc += r.triangles[i] / choose2(target_deg(i));
            acc /= n;
          }
          total += band_distance(acc, b->band);
          break;
        }
        case ScalarProperty::global_cc: {
          const double tri = static_cast<double>(r.total_triangles());
          if (fixed) {
            double paths = 0.0;
            for (int i = 0; i < n; ++i) paths += choose2(target_deg(i));
            total += band_distance(3.0 * tri / paths, b->band);
          } else {
            const double rr = 3.0 * tri, pp = static_cast<double>(r.total_triplets());
            total += std::max({0.0, b->band.lo * pp - rr, rr - b->band.hi * pp});
            total += std::max(0.0, 1.0 - pp);
          }
          break;
        }
        case ScalarProperty::apl: total += band_distance(*r.apl, b->band); break;
        case ScalarProperty::cpl: total += interval_distance(*r.cpl, b->band); break;
        case ScalarProperty::diameter: total += band_distance(*r.diameter, b->band); break;
      }
    } else if (auto cs = std::get_if<ClosenessSequence>(&c)) {
      std::vector<std::vector<double>> cost(n, std::vector<double>(n));
      for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m)
          cost[i][m] = band_distance(detail::inverse_closeness(r, i), detail::inverse_band(cs->bands[m]));
      total += detail::min_cost_assignment(cost);
    } else if (auto a = std::get_if<AdnByDegree>(&c)) {
      for (const auto& [q, band] : a->bands) {
        double sum = 0.0;
        long count = 0;
        for (int i = 1; i <= n; ++i) {
          if (r.degrees[i - 1] != q) continue;
          ++count;
          if (fixed) {
            for (int j : g.neighbors(i)) sum += target_deg(j - 1);
          } else {
            sum += static_cast<double>(r.sdn[i - 1]);
          }
        }
        const double denom = static_cast<double>(q) * static_cast<double>(count);
        total += std::max({0.0, band.lo * denom - sum, sum - band.hi * denom});
      }
    } else if (auto span = std::get_if<MinDegreeSpan>(&c)) {
      auto [lo, hi] = std::minmax_element(r.degrees.begin(), r.degrees.end());
      if (*hi - *lo < span->span) return std::nullopt;
    } else if (std::holds_alternative<NonNull>(c)) {
      if (g.num_edges() == 0) return std::nullopt;
    }
  }
  return total;
}

}  // namespace netgen
