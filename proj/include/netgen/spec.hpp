#pragma once

// Declarative network specification: node count, property bands, objective,
// symmetry-breaking choice, and solver options. Serialized as versioned JSON;
// unknown fields are rejected.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "netgen/milp.hpp"

namespace netgen {

inline constexpr int kSpecVersion = 1;

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Band&, const Band&) = default;
};

enum class ScalarProperty { avg_cc, global_cc, apl, cpl, diameter };

// Degree bounds for a node set (empty = all nodes).
struct DegreeBounds {
  std::vector<int> nodes;
  double lo = 0.0;
  double hi = 0.0;
};
// Non-increasing, node i gets values[i-1].
struct DegreeSequence {
  std::vector<int> values;
};
struct ScalarBand {
  ScalarProperty property = ScalarProperty::avg_cc;
  Band band;
};
// Bands on closeness centrality (not its inverse), one per node.
struct ClosenessSequence {
  std::vector<Band> bands;
};
// Mean neighbour degree of the nodes of degree q.
struct AdnByDegree {
  std::map<int, Band> bands;
};
struct MinDegreeSpan {
  int span = 1;
};
struct NonNull {};

using PropertyConstraint = std::variant<DegreeBounds, DegreeSequence, ScalarBand,
                                        ClosenessSequence, AdnByDegree, MinDegreeSpan, NonNull>;

enum class ObjectiveMode { min_slack, maximize, minimize };

struct SpecObjective {
  ObjectiveMode mode = ObjectiveMode::min_slack;
  ScalarProperty property = ScalarProperty::avg_cc;
};

enum class SecondaryCriterion { none, local_cc, dist_to_last, sdn, inverse_closeness };

struct SymmetryConfig {
  bool primary = false;  // order nodes by non-increasing degree
  SecondaryCriterion secondary = SecondaryCriterion::none;
};

enum class MotifMode { disaggregated, aggregated };

enum class Branching { priority_most_fractional, most_fractional };

struct SolveOptions {
  double time_limit_s = 1800.0;
  long node_limit = -1;  // negative: unlimited
  double abs_gap = 1e-6;
  double integrality_tol = 1e-6;
  double feasibility_tol = 1e-6;
  Branching branching = Branching::priority_most_fractional;
  bool deterministic = true;
  int worker_count = 1;
  int verbosity = 0;
  // Branch on shortest-path flow variables too (only needed to read off paths).
  bool branch_flows = false;
};

struct NetworkSpec {
  int n = 2;
  std::vector<PropertyConstraint> constraints;
  SpecObjective objective;
  SymmetryConfig symmetry;
  MotifMode motif_mode = MotifMode::disaggregated;
  double epsilon = 0.01;  // degree-class threshold offset
  SolveOptions solver;

  template <class T>
  [[nodiscard]] const T* find() const {
    for (const auto& c : constraints)
      if (auto p = std::get_if<T>(&c)) return p;
    return nullptr;
  }
  [[nodiscard]] const ScalarBand* find_scalar(ScalarProperty p) const {
    for (const auto& c : constraints)
      if (auto s = std::get_if<ScalarBand>(&c); s && s->property == p) return s;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Names

inline const char* to_string(ScalarProperty p) {
  switch (p) {
    case ScalarProperty::avg_cc: return "avg_cc";
    case ScalarProperty::global_cc: return "global_cc";
    case ScalarProperty::apl: return "apl";
    case ScalarProperty::cpl: return "cpl";
    case ScalarProperty::diameter: return "diameter";
  }
  return "?";
}

inline ScalarProperty scalar_property_from(const std::string& s) {
  for (auto p : {ScalarProperty::avg_cc, ScalarProperty::global_cc, ScalarProperty::apl,
                 ScalarProperty::cpl, ScalarProperty::diameter})
    if (s == to_string(p)) return p;
  throw Error("unknown property '" + s + "'");
}

inline const char* to_string(SecondaryCriterion c) {
  switch (c) {
    case SecondaryCriterion::none: return "none";
    case SecondaryCriterion::local_cc: return "local_cc";
    case SecondaryCriterion::dist_to_last: return "dist_to_last";
    case SecondaryCriterion::sdn: return "sdn";
    case SecondaryCriterion::inverse_closeness: return "inverse_closeness";
  }
  return "?";
}

inline SecondaryCriterion secondary_from(const std::string& s) {
  for (auto c : {SecondaryCriterion::none, SecondaryCriterion::local_cc,
                 SecondaryCriterion::dist_to_last, SecondaryCriterion::sdn,
                 SecondaryCriterion::inverse_closeness})
    if (s == to_string(c)) return c;
  throw Error("unknown secondary symmetry criterion '" + s + "'");
}

inline std::string describe(const PropertyConstraint& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegreeBounds>) return "degree_bounds";
        else if constexpr (std::is_same_v<T, DegreeSequence>) return "degree_sequence";
        else if constexpr (std::is_same_v<T, ScalarBand>) return to_string(v.property);
        else if constexpr (std::is_same_v<T, ClosenessSequence>) return "closeness_sequence";
        else if constexpr (std::is_same_v<T, AdnByDegree>) return "adn_by_degree";
        else if constexpr (std::is_same_v<T, MinDegreeSpan>) return "min_degree_span";
        else return "non_null";
      },
      c);
}

// ---------------------------------------------------------------------------
// Validation

inline void check_band(const Band& b, double lo, double hi, const std::string& what) {
  if (!(b.lo <= b.hi)) throw Error(what + ": band lower bound exceeds upper bound");
  if (b.lo < lo - 1e-12 || b.hi > hi + 1e-12)
    throw Error(what + ": band outside analytic range [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]");
}

inline void validate(const NetworkSpec& s) {
  if (s.n < 2) throw Error("n must be at least 2");
  const double n = s.n;
  int degseq_count = 0;
  for (const auto& c : s.constraints) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DegreeBounds>) {
            check_band({v.lo, v.hi}, 0, n - 1, "degree_bounds");
            std::set<int> seen;
            for (int i : v.nodes) {
              if (i < 1 || i > s.n) throw Error("degree_bounds: node out of range");
              if (!seen.insert(i).second) throw Error("degree_bounds: duplicate node");
            }
          } else if constexpr (std::is_same_v<T, DegreeSequence>) {
            ++degseq_count;
            if (static_cast<int>(v.values.size()) != s.n)
              throw Error("degree_sequence must have exactly n values");
            for (std::size_t i = 0; i < v.values.size(); ++i) {
              if (v.values[i] < 0 || v.values[i] > s.n - 1)
                throw Error("degree_sequence: value out of range");
              if (i > 0 && v.values[i] > v.values[i - 1])
                throw Error("degree_sequence must be non-increasing");
            }
          } else if constexpr (std::is_same_v<T, ScalarBand>) {
            switch (v.property) {
              case ScalarProperty::avg_cc:
              case ScalarProperty::global_cc: check_band(v.band, 0, 1, to_string(v.property)); break;
              default: check_band(v.band, 1, n - 1, to_string(v.property)); break;
            }
          } else if constexpr (std::is_same_v<T, ClosenessSequence>) {
            if (static_cast<int>(v.bands.size()) != s.n)
              throw Error("closeness_sequence must have exactly n bands");
            for (const auto& b : v.bands) {
              check_band(b, 0, 1, "closeness_sequence");
              if (b.lo <= 0) throw Error("closeness_sequence: lower bounds must be positive");
            }
          } else if constexpr (std::is_same_v<T, AdnByDegree>) {
            for (const auto& [q, b] : v.bands) {
              if (q < 1 || q > s.n - 1) throw Error("adn_by_degree: degree class out of range");
              if (!(b.lo <= b.hi)) throw Error("adn_by_degree: inverted band");
            }
          } else if constexpr (std::is_same_v<T, MinDegreeSpan>) {
            if (v.span < 1 || v.span > s.n - 1) throw Error("min_degree_span out of range");
          }
        },
        c);
  }
  if (degseq_count > 1) throw Error("conflicting constraints: more than one degree_sequence");
  std::set<ScalarProperty> seen;
  for (const auto& c : s.constraints)
    if (auto b = std::get_if<ScalarBand>(&c); b && !seen.insert(b->property).second)
      throw Error(std::string("duplicate band for ") + to_string(b->property));
  if (s.find<ClosenessSequence>() && std::count_if(s.constraints.begin(), s.constraints.end(), [](const auto& c) {
        return std::holds_alternative<ClosenessSequence>(c);
      }) > 1)
    throw Error("more than one closeness_sequence");
  if (!(s.epsilon > 0 && s.epsilon < 1)) throw Error("epsilon must lie in (0,1)");
  const auto& o = s.solver;
  if (!(o.abs_gap > 0 && o.integrality_tol > 0 && o.feasibility_tol > 0))
    throw Error("solver tolerances must be positive");
  if (s.epsilon < 10 * o.feasibility_tol)
    throw Error("epsilon must exceed the feasibility tolerance by at least 10x");
  if (o.worker_count < 1) throw Error("worker_count must be >= 1");
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok |= (it.key() == a);
    if (!ok) throw Error(where + ": unknown field '" + it.key() + "'");
  }
}

inline Band band_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(where + ": band must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json band_to(const Band& b) { return json::array({b.lo, b.hi}); }

inline PropertyConstraint constraint_from(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error("constraint: missing 'kind'");
  const auto kind = j["kind"].get<std::string>();
  const std::string where = "constraint '" + kind + "'";
  if (kind == "degree_bounds") {
    require_keys(j, {"kind", "nodes", "band"}, where);
    DegreeBounds d;
    if (j.contains("nodes") && !(j["nodes"].is_string() && j["nodes"] == "all"))
      d.nodes = j["nodes"].get<std::vector<int>>();
    Band b = band_from(j.at("band"), where);
    d.lo = b.lo;
    d.hi = b.hi;
    return d;
  }
  if (kind == "degree_sequence") {
    require_keys(j, {"kind", "values"}, where);
    return DegreeSequence{j.at("values").get<std::vector<int>>()};
  }
  if (kind == "closeness_sequence") {
    require_keys(j, {"kind", "bands"}, where);
    ClosenessSequence c;
    for (const auto& b : j.at("bands")) c.bands.push_back(band_from(b, where));
    return c;
  }
  if (kind == "adn_by_degree") {
    require_keys(j, {"kind", "bands"}, where);
    AdnByDegree a;
    for (const auto& e : j.at("bands")) {
      require_keys(e, {"q", "band"}, where);
      int q = e.at("q").get<int>();
      if (!a.bands.emplace(q, band_from(e.at("band"), where)).second)
        throw Error(where + ": duplicate degree class");
    }
    return a;
  }
  if (kind == "min_degree_span") {
    require_keys(j, {"kind", "span"}, where);
    return MinDegreeSpan{j.at("span").get<int>()};
  }
  if (kind == "non_null") {
    require_keys(j, {"kind"}, where);
    return NonNull{};
  }
  require_keys(j, {"kind", "band"}, where);
  return ScalarBand{scalar_property_from(kind), band_from(j.at("band"), where)};
}

inline json constraint_to(const PropertyConstraint& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegreeBounds>) {
          json j{{"kind", "degree_bounds"}, {"band", band_to({v.lo, v.hi})}};
          if (v.nodes.empty()) j["nodes"] = "all";
          else j["nodes"] = v.nodes;
          return j;
        } else if constexpr (std::is_same_v<T, DegreeSequence>) {
          return {{"kind", "degree_sequence"}, {"values", v.values}};
        } else if constexpr (std::is_same_v<T, ScalarBand>) {
          return {{"kind", to_string(v.property)}, {"band", band_to(v.band)}};
        } else if constexpr (std::is_same_v<T, ClosenessSequence>) {
          json arr = json::array();
          for (const auto& b : v.bands) arr.push_back(band_to(b));
          return {{"kind", "closeness_sequence"}, {"bands", arr}};
        } else if constexpr (std::is_same_v<T, AdnByDegree>) {
          json arr = json::array();
          for (const auto& [q, b] : v.bands) arr.push_back({{"q", q}, {"band", band_to(b)}});
          return {{"kind", "adn_by_degree"}, {"bands", arr}};
        } else if constexpr (std::is_same_v<T, MinDegreeSpan>) {
          return {{"kind", "min_degree_span"}, {"span", v.span}};
        } else {
          return {{"kind", "non_null"}};
        }
      },
      c);
}

}  // namespace detail

inline NetworkSpec spec_from_json(const nlohmann::json& j) {
  using detail::require_keys;
  require_keys(j, {"version", "n", "constraints", "objective", "symmetry", "motif_mode", "epsilon",
                   "solver"},
               "spec");
  if (!j.contains("version") || j["version"] != kSpecVersion)
    throw Error("spec: unsupported or missing version (expected " + std::to_string(kSpecVersion) + ")");
  NetworkSpec s;
  s.n = j.at("n").get<int>();
  if (j.contains("constraints"))
    for (const auto& c : j["constraints"]) s.constraints.push_back(detail::constraint_from(c));
  if (j.contains("objective")) {
    const auto& o = j["objective"];
    require_keys(o, {"mode", "property"}, "objective");
    const auto mode = o.at("mode").get<std::string>();
    if (mode == "min_slack") s.objective.mode = ObjectiveMode::min_slack;
    else if (mode == "maximize") s.objective.mode = ObjectiveMode::maximize;
    else if (mode == "minimize") s.objective.mode = ObjectiveMode::minimize;
    else throw Error("objective: unknown mode '" + mode + "'");
    if (s.objective.mode != ObjectiveMode::min_slack)
      s.objective.property = scalar_property_from(o.at("property").get<std::string>());
    else if (o.contains("property"))
      throw Error("objective: 'property' only applies to maximize/minimize");
  }
  if (j.contains("symmetry")) {
    const auto& y = j["symmetry"];
    require_keys(y, {"primary", "secondary"}, "symmetry");
    if (y.contains("primary")) {
      const auto p = y["primary"].get<std::string>();
      if (p == "degree") s.symmetry.primary = true;
      else if (p != "none") throw Error("symmetry: primary must be 'degree' or 'none'");
    }
    if (y.contains("secondary")) s.symmetry.secondary = secondary_from(y["secondary"].get<std::string>());
  }
  if (j.contains("motif_mode")) {
    const auto m = j["motif_mode"].get<std::string>();
    if (m == "disaggregated") s.motif_mode = MotifMode::disaggregated;
    else if (m == "aggregated") s.motif_mode = MotifMode::aggregated;
    else throw Error("unknown motif_mode '" + m + "'");
  }
  if (j.contains("epsilon")) s.epsilon = j["epsilon"].get<double>();
  if (j.contains("solver")) {
    const auto& o = j["solver"];
    require_keys(o, {"time_limit_s", "node_limit", "abs_gap", "integrality_tol", "feasibility_tol",
                     "branching", "deterministic", "worker_count", "verbosity", "branch_flows"},
                 "solver");
    auto& so = s.solver;
    so.time_limit_s = o.value("time_limit_s", so.time_limit_s);
    so.node_limit = o.value("node_limit", so.node_limit);
    so.abs_gap = o.value("abs_gap", so.abs_gap);
    so.integrality_tol = o.value("integrality_tol", so.integrality_tol);
    so.feasibility_tol = o.value("feasibility_tol", so.feasibility_tol);
    so.deterministic = o.value("deterministic", so.deterministic);
    so.worker_count = o.value("worker_count", so.worker_count);
    so.verbosity = o.value("verbosity", so.verbosity);
    so.branch_flows = o.value("branch_flows", so.branch_flows);
    if (o.contains("branching")) {
      const auto b = o["branching"].get<std::string>();
      if (b == "priority_most_fractional") so.branching = Branching::priority_most_fractional;
      else if (b == "most_fractional") so.branching = Branching::most_fractional;
      else throw Error("solver: unknown branching '" + b + "'");
    }
  }
  validate(s);
  return s;
}

inline NetworkSpec parse_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("spec is not valid JSON: ") + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed spec: ") + e.what());
  }
}

inline nlohmann::json spec_to_json(const NetworkSpec& s) {
  using nlohmann::json;
  json j;
  j["version"] = kSpecVersion;
  j["n"] = s.n;
  j["constraints"] = json::array();
  for (const auto& c : s.constraints) j["constraints"].push_back(detail::constraint_to(c));
  json o{{"mode", s.objective.mode == ObjectiveMode::min_slack
                      ? "min_slack"
                      : (s.objective.mode == ObjectiveMode::maximize ? "maximize" : "minimize")}};
  if (s.objective.mode != ObjectiveMode::min_slack) o["property"] = to_string(s.objective.property);
  j["objective"] = o;
  j["symmetry"] = {{"primary", s.symmetry.primary ? "degree" : "none"},
                   {"secondary", to_string(s.symmetry.secondary)}};
  j["motif_mode"] = s.motif_mode == MotifMode::disaggregated ? "disaggregated" : "aggregated";
  j["epsilon"] = s.epsilon;
  const auto& so = s.solver;
  j["solver"] = {{"time_limit_s", so.time_limit_s},
                 {"node_limit", so.node_limit},
                 {"abs_gap", so.abs_gap},
                 {"integrality_tol", so.integrality_tol},
                 {"feasibility_tol", so.feasibility_tol},
                 {"branching", so.branching == Branching::priority_most_fractional
                                   ? "priority_most_fractional"
                                   : "most_fractional"},
                 {"deterministic", so.deterministic},
                 {"worker_count", so.worker_count},
                 {"verbosity", so.verbosity},
                 {"branch_flows", so.branch_flows}};
  return j;
}

inline std::string spec_digest(const NetworkSpec& s) {
  // FNV-1a over the normalized JSON.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec_to_json(s).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace netgen
