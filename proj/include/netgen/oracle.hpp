#pragma once

// Brute force over every labeled graph on a small node set.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "netgen/graph.hpp"
#include "netgen/spec.hpp"
#include "netgen/verify.hpp"

namespace netgen {

inline constexpr int kOracleMaxNodes = 6;

// Visits each edge subset once; bit b of the mask is the b-th pair in
// lexicographic order (1,2), (1,3), ..., (n-1,n).
inline void enumerate_graphs(int n, const std::function<void(std::uint32_t, const Graph&)>& visit) {
  if (n < 2) throw Error("oracle needs n >= 2");
  if (n > kOracleMaxNodes) throw Error("oracle enumeration is limited to n <= " + std::to_string(kOracleMaxNodes));
  const int pairs = n * (n - 1) / 2;
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    Graph g(n);
    int bit = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j, ++bit)
        if (mask >> bit & 1u) g.add_edge(i, j);
    visit(mask, g);
  }
}

struct OracleOptimum {
  ScalarProperty property = ScalarProperty::avg_cc;
  bool maximize = true;
  double value = 0.0;
  Graph witness{2};
};

struct OracleReport {
  int n = 0;
  std::string digest;
  std::set<std::string> feasible_keys;
  long labeled_feasible = 0;
  std::map<std::string, Graph> witnesses;  // first labeled graph of each class
  std::optional<double> min_slack;         // least deviation over all graphs
  std::optional<OracleOptimum> optimum;
};

inline std::optional<double> property_value(const PropertyReport& r, ScalarProperty p) {
  switch (p) {
    case ScalarProperty::avg_cc: return r.avg_cc;
    case ScalarProperty::global_cc: return r.global_cc;
    case ScalarProperty::apl: return r.apl;
    case ScalarProperty::cpl:
      if (r.cpl && r.cpl->lo == r.cpl->hi) return r.cpl->lo;
      return std::nullopt;
    case ScalarProperty::diameter:
      if (r.diameter) return static_cast<double>(*r.diameter);
      return std::nullopt;
  }
  return std::nullopt;
}

inline OracleReport feasible_graphs(const NetworkSpec& spec, double tol = 1e-9) {
  OracleReport out;
  out.n = spec.n;
  out.digest = spec_digest(spec);
  enumerate_graphs(spec.n, [&](std::uint32_t, const Graph& g) {
    if (const auto s = spec_slack(g, spec); s && (!out.min_slack || *s < *out.min_slack)) out.min_slack = s;
    if (!check_spec(g, spec, tol).pass) return;
    ++out.labeled_feasible;
    auto key = canonical_key(g);
    out.witnesses.try_emplace(key, g);
    out.feasible_keys.insert(std::move(key));
  });
  return out;
}

// Extremum of a property over the feasible set. Graphs on which the property
// is undefined are skipped.
inline OracleOptimum optimal_value(const NetworkSpec& spec, ScalarProperty p, bool maximize, double tol = 1e-9) {
  std::optional<OracleOptimum> best;
  enumerate_graphs(spec.n, [&](std::uint32_t, const Graph& g) {
    if (!check_spec(g, spec, tol).pass) return;
    const auto v = property_value(compute_report(g), p);
    if (!v) return;
    if (!best || (maximize ? *v > best->value : *v < best->value)) best = OracleOptimum{p, maximize, *v, g};
  });
  if (!best) throw Error("optimal_value: the feasible set is empty");
  return *best;
}

inline OracleReport oracle_report(const NetworkSpec& spec) {
  auto r = feasible_graphs(spec);
  if (spec.objective.mode != ObjectiveMode::min_slack && r.labeled_feasible > 0)
    r.optimum = optimal_value(spec, spec.objective.property, spec.objective.mode == ObjectiveMode::maximize);
  return r;
}

inline nlohmann::json to_json(const OracleReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["spec_digest"] = r.digest;
  j["labeled_feasible_count"] = r.labeled_feasible;
  j["feasible_class_count"] = r.feasible_keys.size();
  j["feasible_canonical_keys"] = r.feasible_keys;
  auto& w = j["witnesses"] = nlohmann::json::object();
  for (const auto& [key, g] : r.witnesses) w[key] = g.edges();
  j["min_slack"] = r.min_slack ? nlohmann::json(*r.min_slack) : nlohmann::json(nullptr);
  if (r.optimum) {
    j["optimum"] = {{"property", to_string(r.optimum->property)},
                    {"sense", r.optimum->maximize ? "maximize" : "minimize"},
                    {"value", r.optimum->value},
                    {"witness", r.optimum->witness.edges()}};
  }
  return j;
}

}  // namespace netgen
