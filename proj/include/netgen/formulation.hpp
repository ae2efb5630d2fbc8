#pragma once

// NetworkSpec -> MilpModel compiler. Each encode_* function adds one family of
// variables and rows to a ModelBuilder and records its handles so later
// encoders (specifications, symmetry breaking) can refer to them.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netgen/graph.hpp"
#include "netgen/milp.hpp"
#include "netgen/spec.hpp"
#include "netgen/verify.hpp"

namespace netgen {

inline constexpr int kEdgePriority = 100;
inline constexpr int kStructuralPriority = 50;
inline constexpr int kMotifPriority = 20;
inline constexpr int kContinuousPriority = 0;
inline constexpr int kFlowPriority = -100;

// Slack variables belonging to one specification, for per-spec reporting.
struct SlackGroup {
  std::string constraint;
  std::vector<VarId> vars;
};

class VariableRegistry {
 public:
  VariableRegistry() = default;
  explicit VariableRegistry(int n) : n_(n) {}

  [[nodiscard]] int n() const { return n_; }

  void add(const std::string& key, VarId id) {
    if (!symbols_.emplace(key, id).second) throw Error("symbol registered twice: " + key);
    if (names_.size() <= id) names_.resize(id + 1);
    names_[id] = key;
  }
  [[nodiscard]] std::optional<VarId> find(const std::string& key) const {
    auto it = symbols_.find(key);
    if (it == symbols_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] VarId at(const std::string& key) const {
    auto it = symbols_.find(key);
    if (it == symbols_.end()) throw Error("unknown symbol: " + key);
    return it->second;
  }
  [[nodiscard]] const std::string& name_of(VarId id) const { return names_.at(id); }
  [[nodiscard]] const std::map<std::string, VarId>& symbols() const { return symbols_; }

  [[nodiscard]] VarId edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return edges_.at(pair_index(i, j));
  }
  [[nodiscard]] const std::vector<VarId>& edges() const { return edges_; }
  void set_edges(std::vector<VarId> e) { edges_ = std::move(e); }

  // Index of pair (i,j), 1 <= i < j <= n, in lexicographic order.
  [[nodiscard]] std::size_t pair_index(int i, int j) const {
    const std::size_t a = static_cast<std::size_t>(i - 1);
    return a * static_cast<std::size_t>(n_) - a * (a + 1) / 2 + static_cast<std::size_t>(j - i - 1);
  }

  std::vector<SlackGroup>& slack_groups() { return slacks_; }
  [[nodiscard]] const std::vector<SlackGroup>& slack_groups() const { return slacks_; }
  [[nodiscard]] std::vector<VarId> all_slacks() const {
    std::vector<VarId> out;
    for (const auto& g : slacks_) out.insert(out.end(), g.vars.begin(), g.vars.end());
    return out;
  }

  [[nodiscard]] Graph extract_graph(const std::vector<double>& values) const {
    Graph g(n_);
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if (values.at(edge(i, j)) > 0.5) g.add_edge(i, j);
    return g;
  }

 private:
  int n_ = 0;
  std::vector<VarId> edges_;
  std::map<std::string, VarId> symbols_;
  std::vector<std::string> names_;
  std::vector<SlackGroup> slacks_;
};

inline std::string sym(const std::string& base, std::initializer_list<int> idx) {
  std::string s = base;
  for (int i : idx) s += "_" + std::to_string(i);
  return s;
}

using PairKey = std::pair<int, int>;

// Mutable state shared by the encoders.
class ModelBuilder {
 public:
  explicit ModelBuilder(int n, MotifMode mode = MotifMode::disaggregated, bool slack_mode = true)
      : n_(n), mode_(mode), slack_mode_(slack_mode), reg_(n) {
    if (n < 2) throw Error("n must be at least 2");
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] MotifMode motif_mode() const { return mode_; }
  [[nodiscard]] bool slack_mode() const { return slack_mode_; }
  MilpModel& model() { return model_; }
  [[nodiscard]] const MilpModel& model() const { return model_; }
  VariableRegistry& registry() { return reg_; }
  [[nodiscard]] const VariableRegistry& registry() const { return reg_; }

  VarId var(const std::string& name, VarKind kind, double lo, double hi, int priority = kContinuousPriority) {
    const VarId id = model_.add_variable(name, kind, lo, hi, priority);
    reg_.add(name, id);
    return id;
  }
  RowId row(const std::string& name, std::vector<Term> terms, Sense sense, double rhs) {
    return model_.add_linear_constraint(name, std::move(terms), sense, rhs);
  }
  [[nodiscard]] double lower(VarId v) const { return model_.variable(v).lower; }
  [[nodiscard]] double upper(VarId v) const { return model_.variable(v).upper; }
  [[nodiscard]] bool has(const std::string& name) const { return reg_.find(name).has_value(); }
  [[nodiscard]] VarId at(const std::string& name) const { return reg_.at(name); }

  // Handles filled by the encoders.
  std::vector<VarId> pd;
  std::vector<VarId> pntr, pntp, pcc;
  std::optional<VarId> pacc, pgcc;
  bool fixed_clustering = false;
  std::map<PairKey, VarId> w;
  std::optional<VarId> papl, pcpl;
  std::vector<VarId> piclc;
  std::vector<VarId> psdn;
  std::map<PairKey, VarId> z;  // (q, i)
  std::map<int, VarId> pnnd;
  std::map<PairKey, VarId> psdnp;  // (q, i)
  int class_lo = 0, class_hi = -1;

 private:
  int n_;
  MotifMode mode_;
  bool slack_mode_;
  MilpModel model_;
  VariableRegistry reg_;
};

// ---------------------------------------------------------------------------
// Edges and motifs

inline const std::vector<VarId>& encode_edges(ModelBuilder& b, int n) {
  if (n < 2) throw Error("n must be at least 2");
  if (n != b.n()) throw Error("encode_edges: n does not match builder");
  if (!b.registry().edges().empty()) return b.registry().edges();
  std::vector<VarId> x;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) x.push_back(b.var(sym("x", {i, j}), VarKind::binary, 0, 1, kEdgePriority));
  b.registry().set_edges(std::move(x));
  return b.registry().edges();
}

enum class MotifKind { two_path, triangle, clique4, star4 };

// Node order: centre first for two_path and star4.
struct Motif {
  MotifKind kind = MotifKind::triangle;
  std::vector<int> nodes;
};

struct MotifEdges {
  std::vector<PairKey> present, absent;
};

inline MotifEdges motif_edges(const Motif& m) {
  const auto& v = m.nodes;
  const std::size_t need = (m.kind == MotifKind::two_path || m.kind == MotifKind::triangle) ? 3 : 4;
  if (v.size() != need) throw Error("motif has wrong number of nodes");
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t c = a + 1; c < v.size(); ++c)
      if (v[a] == v[c]) throw Error("motif nodes must be distinct");
  auto e = [](int i, int j) { return i < j ? PairKey{i, j} : PairKey{j, i}; };
  MotifEdges out;
  switch (m.kind) {
    case MotifKind::two_path: out.present = {e(v[0], v[1]), e(v[0], v[2])}; break;
    case MotifKind::triangle: out.present = {e(v[0], v[1]), e(v[0], v[2]), e(v[1], v[2])}; break;
    case MotifKind::clique4:
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t c = a + 1; c < 4; ++c) out.present.push_back(e(v[a], v[c]));
      break;
    case MotifKind::star4:
      out.present = {e(v[0], v[1]), e(v[0], v[2]), e(v[0], v[3])};
      out.absent = {e(v[1], v[2]), e(v[1], v[3]), e(v[2], v[3])};
      break;
  }
  return out;
}

inline std::string motif_name(const Motif& m) {
  static const char* prefix[] = {"ytp", "ytr", "yclq", "ystr"};
  std::string s = prefix[static_cast<int>(m.kind)];
  for (int i : m.nodes) s += "_" + std::to_string(i);
  return s;
}

inline VarId encode_motif(ModelBuilder& b, const Motif& m, MotifMode mode) {
  const auto edges = motif_edges(m);
  for (int i : m.nodes)
    if (i < 1 || i > b.n()) throw Error("motif node out of range");
  const std::string name = motif_name(m);
  if (auto existing = b.registry().find(name)) return *existing;
  const auto& reg = b.registry();
  const double np = static_cast<double>(edges.present.size());
  const double na = static_cast<double>(edges.absent.size());
  VarId y;
  if (mode == MotifMode::disaggregated) {
    y = b.var(name, VarKind::continuous, 0, 1);
    int k = 0;
    for (auto [i, j] : edges.present)
      b.row(name + "_ub" + std::to_string(++k), {{y, 1}, {reg.edge(i, j), -1}}, Sense::le, 0);
    for (auto [i, j] : edges.absent)
      b.row(name + "_ub" + std::to_string(++k), {{y, 1}, {reg.edge(i, j), 1}}, Sense::le, 1);
  } else {
    y = b.var(name, VarKind::binary, 0, 1, kMotifPriority);
    std::vector<Term> t{{y, np}};
    for (auto [i, j] : edges.present) t.push_back({reg.edge(i, j), -1});
    b.row(name + "_ub1", std::move(t), Sense::le, 0);
    if (!edges.absent.empty()) {
      std::vector<Term> a{{y, na}};
      for (auto [i, j] : edges.absent) a.push_back({reg.edge(i, j), 1});
      b.row(name + "_ub2", std::move(a), Sense::le, na);
    }
  }
  std::vector<Term> lb{{y, 1}};
  for (auto [i, j] : edges.present) lb.push_back({reg.edge(i, j), -1});
  for (auto [i, j] : edges.absent) lb.push_back({reg.edge(i, j), 1});
  b.row(name + "_lb", std::move(lb), Sense::ge, 1 - np);
  return y;
}

// ---------------------------------------------------------------------------
// Degrees and clustering

inline const std::vector<VarId>& encode_degrees(ModelBuilder& b) {
  if (!b.pd.empty()) return b.pd;
  encode_edges(b, b.n());
  const int n = b.n();
  for (int i = 1; i <= n; ++i) {
    const VarId p = b.var(sym("pd", {i}), VarKind::continuous, 0, n - 1);
    std::vector<Term> t{{p, 1}};
    for (int j = 1; j <= n; ++j)
      if (j != i) t.push_back({b.registry().edge(i, j), -1});
    b.row(sym("deg", {i}), std::move(t), Sense::eq, 0);
    b.pd.push_back(p);
  }
  return b.pd;
}

inline double choose2(double d) { return d * (d - 1) / 2.0; }

struct ClusteringNeeds {
  bool local = false;   // pcc_i and pacc
  bool global = false;  // pgcc, or pntp for the fractional form
};

// With a fixed degree sequence, pcc and pgcc are linear in the triangle
// counts. Otherwise pcc_i uses a one-hot degree class per node and global
// clustering is left to the fractional specification form over pntp.
inline void encode_clustering(ModelBuilder& b, const DegreeSequence* fixed, ClusteringNeeds needs) {
  const int n = b.n();
  encode_degrees(b);
  const double max_tri = choose2(n - 1);
  if (b.pntr.empty()) {
    std::vector<std::vector<Term>> per_node(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          const VarId y = encode_motif(b, {MotifKind::triangle, {i, j, k}}, b.motif_mode());
          for (int v : {i, j, k}) per_node[v - 1].push_back({y, -1});
        }
    for (int i = 1; i <= n; ++i) {
      const VarId p = b.var(sym("pntr", {i}), VarKind::continuous, 0, max_tri);
      auto t = per_node[i - 1];
      t.push_back({p, 1});
      b.row(sym("ntr", {i}), std::move(t), Sense::eq, 0);
      b.pntr.push_back(p);
    }
  }

  if (fixed) {
    const auto& d = fixed->values;
    if ((needs.local || needs.global) && d.back() < 2)
      throw Error("fixed-form clustering needs every prescribed degree to be at least 2");
    b.fixed_clustering = true;
    if (needs.local && b.pcc.empty()) {
      double acc_hi = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double c = choose2(d[i - 1]);
        const double hi = b.slack_mode() ? max_tri / c : 1.0;
        acc_hi += hi;
        const VarId p = b.var(sym("pcc", {i}), VarKind::continuous, 0, hi);
        b.row(sym("cc", {i}), {{p, c}, {b.pntr[i - 1], -1}}, Sense::eq, 0);
        b.pcc.push_back(p);
      }
      const VarId acc = b.var("pacc", VarKind::continuous, 0, acc_hi / n);
      std::vector<Term> t{{acc, static_cast<double>(n)}};
      for (VarId p : b.pcc) t.push_back({p, -1});
      b.row("acc", std::move(t), Sense::eq, 0);
      b.pacc = acc;
    }
    if (needs.global && !b.pgcc) {
      double paths = 0.0;
      for (int v : d) paths += choose2(v);
      const double hi = b.slack_mode() ? n * max_tri / paths : 1.0;
      const VarId g = b.var("pgcc", VarKind::continuous, 0, hi);
      std::vector<Term> t{{g, paths}};
      for (VarId p : b.pntr) t.push_back({p, -1});
      b.row("gcc", std::move(t), Sense::eq, 0);
      b.pgcc = g;
    }
    return;
  }

  if (needs.global && b.pntp.empty()) {
    for (int i = 1; i <= n; ++i) {
      std::vector<Term> t;
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          if (j == i || k == i) continue;
          t.push_back({encode_motif(b, {MotifKind::two_path, {i, j, k}}, b.motif_mode()), -1});
        }
      const VarId p = b.var(sym("pntp", {i}), VarKind::continuous, 0, max_tri);
      t.push_back({p, 1});
      b.row(sym("ntp", {i}), std::move(t), Sense::eq, 0);
      b.pntp.push_back(p);
    }
  }

  if (needs.local && b.pcc.empty()) {
    for (int i = 1; i <= n; ++i) {
      std::vector<Term> one, deg{{b.pd[i - 1], -1}}, sum;
      for (int d = 0; d <= n - 1; ++d) {
        const VarId c = b.var(sym("dclass", {i, d}), VarKind::binary, 0, 1, kStructuralPriority);
        one.push_back({c, 1});
        if (d > 0) deg.push_back({c, static_cast<double>(d)});
        if (d < 2) continue;
        const double cd = choose2(d);
        const VarId pc = b.var(sym("pcc", {i, d}), VarKind::continuous, 0, 1);
        b.row(sym("ccg", {i, d}) + "_on", {{pc, 1}, {c, -1}}, Sense::le, 0);
        b.row(sym("ccg", {i, d}) + "_lo", {{b.pntr[i - 1], 1}, {pc, -cd}, {c, max_tri}}, Sense::le, max_tri);
        b.row(sym("ccg", {i, d}) + "_hi", {{pc, cd}, {b.pntr[i - 1], -1}, {c, cd}}, Sense::le, cd);
        sum.push_back({pc, -1});
      }
      b.row(sym("dclass", {i}), std::move(one), Sense::eq, 1);
      b.row(sym("dclass_deg", {i}), std::move(deg), Sense::eq, 0);
      const VarId p = b.var(sym("pcc", {i}), VarKind::continuous, 0, 1);
      sum.push_back({p, 1});
      b.row(sym("cc", {i}), std::move(sum), Sense::eq, 0);
      b.pcc.push_back(p);
    }
    const VarId acc = b.var("pacc", VarKind::continuous, 0, 1);
    std::vector<Term> t{{acc, static_cast<double>(n)}};
    for (VarId p : b.pcc) t.push_back({p, -1});
    b.row("acc", std::move(t), Sense::eq, 0);
    b.pacc = acc;
  }
}


// ---------------------------------------------------------------------------
// Shortest paths

inline std::vector<PairKey> all_pairs(int n) {
  std::vector<PairKey> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  return out;
}

// Per pair: unit-capacity flow LP, its dual gated by the edge variables, and
// the two equalities tying both objective values to w_ij. Pairs that cannot be
// connected make the model infeasible.
inline std::vector<VarId> encode_shortest_paths(ModelBuilder& b, const std::vector<PairKey>& pairs,
                                                bool binary_flows = true) {
  const int n = b.n();
  encode_edges(b, n);
  const auto& reg = b.registry();
  const double big_u = n - 2;
  const double span = n - 1;
  std::vector<VarId> out;
  for (auto [pi, pj] : pairs) {
    if (pi == pj) throw Error("shortest path pair needs two distinct nodes");
    if (pi < 1 || pj < 1 || pi > n || pj > n) throw Error("shortest path pair out of range");
    const int i = std::min(pi, pj), j = std::max(pi, pj);
    if (auto it = b.w.find({i, j}); it != b.w.end()) {
      out.push_back(it->second);
      continue;
    }
    const std::string tag = "_" + std::to_string(i) + "_" + std::to_string(j);
    std::vector<std::vector<VarId>> f(n + 1, std::vector<VarId>(n + 1));
    std::vector<Term> flow_sum;
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) {
        if (k == l) continue;
        f[k][l] = b.var(sym("f" + tag, {k, l}), binary_flows ? VarKind::binary : VarKind::continuous, 0, 1,
                        kFlowPriority);
        flow_sum.push_back({f[k][l], 1});
      }
    for (int k = 1; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l)
        b.row(sym("cap" + tag, {k, l}), {{f[k][l], 1}, {f[l][k], 1}, {reg.edge(k, l), -1}}, Sense::le, 0);
    for (int k = 1; k <= n; ++k) {
      std::vector<Term> t;
      for (int l = 1; l <= n; ++l) {
        if (l == k) continue;
        t.push_back({f[k][l], 1});
        t.push_back({f[l][k], -1});
      }
      const double xi = k == i ? 1.0 : (k == j ? -1.0 : 0.0);
      b.row(sym("flow" + tag, {k}), std::move(t), Sense::eq, xi);
    }

    std::vector<VarId> t(n + 1);
    for (int k = 1; k <= n; ++k) t[k] = b.var(sym("t" + tag, {k}), VarKind::continuous, -span, span);
    std::vector<Term> dual_obj;
    for (int k = 1; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        const VarId u = b.var(sym("u" + tag, {k, l}), VarKind::continuous, -span, 0);
        const VarId v = b.var(sym("v" + tag, {k, l}), VarKind::continuous, -span, 0);
        b.row(sym("dkl" + tag, {k, l}), {{v, 1}, {t[k], 1}, {t[l], -1}}, Sense::le, 1);
        b.row(sym("dlk" + tag, {k, l}), {{v, 1}, {t[l], 1}, {t[k], -1}}, Sense::le, 1);
        b.row(sym("duv" + tag, {k, l}), {{u, 1}, {v, -1}, {reg.edge(k, l), big_u}}, Sense::le, big_u);
        dual_obj.push_back({u, -1});
      }
    const VarId wij = b.var(sym("w", {i, j}), VarKind::continuous, 1, span);
    flow_sum.push_back({wij, -1});
    b.row("primal" + tag, std::move(flow_sum), Sense::eq, 0);
    dual_obj.push_back({wij, 1});
    dual_obj.push_back({t[i], -1});
    dual_obj.push_back({t[j], 1});
    b.row("dual" + tag, std::move(dual_obj), Sense::eq, 0);
    b.w[{i, j}] = wij;
    out.push_back(wij);
  }
  return out;
}

inline VarId w_of(const ModelBuilder& b, int i, int j) {
  if (i > j) std::swap(i, j);
  auto it = b.w.find({i, j});
  if (it == b.w.end()) throw Error("shortest path not encoded for pair " + std::to_string(i) + "," + std::to_string(j));
  return it->second;
}

struct PathStatistics {
  bool apl = false, cpl = false, closeness = false;
};

inline void encode_path_statistics(ModelBuilder& b, PathStatistics which) {
  const int n = b.n();
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  if ((which.apl || which.cpl || which.closeness) && b.w.size() != pairs)
    throw Error("path statistics need shortest paths for every pair");
  const double span = n - 1;
  if (which.apl && !b.papl) {
    const VarId p = b.var("papl", VarKind::continuous, 1, span);
    std::vector<Term> t{{p, static_cast<double>(pairs)}};
    for (auto& [key, w] : b.w) t.push_back({w, -1});
    b.row("apl", std::move(t), Sense::eq, 0);
    b.papl = p;
  }
  if (which.cpl && !b.pcpl) {
    const VarId p = b.var("pcpl", VarKind::continuous, 1, span);
    const double u1 = std::ceil(n / 2.0) - 1, u2 = n - 2;
    std::vector<Term> plus, minus;
    for (auto& [key, w] : b.w) {
      auto [i, j] = key;
      const VarId rp = b.var(sym("rcplp", {i, j}), VarKind::binary, 0, 1, kStructuralPriority);
      const VarId rm = b.var(sym("rcplm", {i, j}), VarKind::binary, 0, 1, kStructuralPriority);
      b.row(sym("cplp", {i, j}) + "_lo", {{w, 1}, {p, -1}, {rp, u1}}, Sense::ge, 0);
      b.row(sym("cplp", {i, j}) + "_hi", {{w, 1}, {p, -1}, {rp, u2}}, Sense::le, u2);
      b.row(sym("cplm", {i, j}) + "_hi", {{w, 1}, {p, -1}, {rm, -u2}}, Sense::le, 0);
      b.row(sym("cplm", {i, j}) + "_lo", {{w, 1}, {p, -1}, {rm, -u1}}, Sense::ge, -u1);
      plus.push_back({rp, 2});
      minus.push_back({rm, 2});
    }
    const double rhs = static_cast<double>(pairs + (pairs % 2));
    b.row("cpl_count_plus", std::move(plus), Sense::eq, rhs);
    b.row("cpl_count_minus", std::move(minus), Sense::eq, rhs);
    b.pcpl = p;
  }
  if (which.closeness && b.piclc.empty()) {
    for (int i = 1; i <= n; ++i) {
      const VarId p = b.var(sym("piclc", {i}), VarKind::continuous, 1, n / 2.0);
      std::vector<Term> t{{p, span}};
      for (int j = 1; j <= n; ++j)
        if (j != i) t.push_back({w_of(b, i, j), -1});
      b.row(sym("iclc", {i}), std::move(t), Sense::eq, 0);
      b.piclc.push_back(p);
    }
  }
}

// ---------------------------------------------------------------------------
// Subsets

// z_i = 1 iff p_i >= threshold (at_least) or p_i <= threshold (otherwise).
// For discrete-valued p an epsilon offset on the threshold makes equality
// resolve to membership.
inline std::vector<VarId> encode_threshold_subset(ModelBuilder& b, const std::string& tag,
                                                  const std::vector<VarId>& p, double threshold,
                                                  bool at_least = true, int priority = kStructuralPriority) {
  std::vector<VarId> out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int i = static_cast<int>(k) + 1;
    const double lo = b.lower(p[k]), hi = b.upper(p[k]);
    const VarId z = b.var(sym(tag, {i}), VarKind::binary, 0, 1, priority);
    if (at_least) {
      b.row(sym(tag + "_lo", {i}), {{p[k], 1}, {z, lo - threshold}}, Sense::ge, lo);
      b.row(sym(tag + "_hi", {i}), {{p[k], 1}, {z, -(hi - threshold)}}, Sense::le, threshold);
    } else {
      b.row(sym(tag + "_hi", {i}), {{p[k], 1}, {z, hi - threshold}}, Sense::le, hi);
      b.row(sym(tag + "_lo", {i}), {{p[k], 1}, {z, -(lo - threshold)}}, Sense::ge, threshold);
    }
    out.push_back(z);
  }
  return out;
}

// Per node: sum over subsets e of z_i^e, so membership in all K subsets is
// "aggregate == K". Used for intersections of subsets.
using SubsetGates = std::vector<std::vector<VarId>>;

namespace detail {

// Adds coef * (1 - sum_e (1 - z_i^e)) to terms/rhs: the intersection
// indicator expression for node index k. With no subsets it is constant 1.
inline void add_gate(std::vector<Term>& terms, double& rhs, const SubsetGates& gates, std::size_t k, double coef) {
  double constant = 1.0 - static_cast<double>(gates.size());
  for (const auto& g : gates) terms.push_back({g.at(k), coef});
  rhs -= coef * constant;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sequence assignment

// q_im = 1 assigns node i to band m. slacks, when given, relax each node's
// band membership: p_i + s-_i - s+_i must lie in its assigned band.
inline std::vector<std::vector<VarId>> encode_sequence_assignment(
    ModelBuilder& b, const std::string& tag, const std::vector<VarId>& p, const std::vector<Band>& bands,
    const SubsetGates& gates = {}, const std::vector<std::pair<VarId, VarId>>* slacks = nullptr) {
  const std::size_t nn = p.size(), mm = bands.size();
  if (mm > nn) throw Error("sequence has more bands than nodes");
  if (slacks && slacks->size() != nn) throw Error("sequence slack count mismatch");
  std::vector<std::vector<VarId>> q(nn, std::vector<VarId>(mm));
  for (std::size_t k = 0; k < nn; ++k) {
    const int i = static_cast<int>(k) + 1;
    const double lo = b.lower(p[k]), hi = b.upper(p[k]);
    for (std::size_t m = 0; m < mm; ++m) {
      const int mi = static_cast<int>(m) + 1;
      q[k][m] = b.var(sym(tag, {i, mi}), VarKind::binary, 0, 1, kStructuralPriority);
      std::vector<Term> base{{p[k], 1}};
      if (slacks) {
        base.push_back({(*slacks)[k].first, 1});
        base.push_back({(*slacks)[k].second, -1});
      }
      auto lo_row = base;
      lo_row.push_back({q[k][m], lo - bands[m].lo});
      b.row(sym(tag + "_lo", {i, mi}), std::move(lo_row), Sense::ge, lo);
      auto hi_row = base;
      hi_row.push_back({q[k][m], hi - bands[m].hi});
      b.row(sym(tag + "_hi", {i, mi}), std::move(hi_row), Sense::le, hi);
    }
  }
  for (std::size_t m = 0; m < mm; ++m) {
    std::vector<Term> t;
    for (std::size_t k = 0; k < nn; ++k) t.push_back({q[k][m], 1});
    b.row(sym(tag + "_band", {static_cast<int>(m) + 1}), std::move(t), Sense::eq, 1);
  }
  for (std::size_t k = 0; k < nn; ++k) {
    const int i = static_cast<int>(k) + 1;
    std::vector<Term> t;
    for (std::size_t m = 0; m < mm; ++m) t.push_back({q[k][m], 1});
    if (gates.empty()) {
      b.row(sym(tag + "_node", {i}), std::move(t), mm == nn ? Sense::eq : Sense::le, 1);
      continue;
    }
    for (std::size_t e = 0; e < gates.size(); ++e) {
      auto te = t;
      te.push_back({gates[e].at(k), -1});
      b.row(sym(tag + "_node", {i, static_cast<int>(e) + 1}), std::move(te), Sense::le, 0);
    }
    double rhs = 0.0;
    detail::add_gate(t, rhs, gates, k, -1.0);
    b.row(sym(tag + "_node", {i}), std::move(t), Sense::ge, rhs);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Statistics over a (possibly variable) node subset

enum class Statistic { sum, median };

struct StatisticsHandles {
  std::vector<VarId> pprime;
  std::optional<VarId> median;
  std::vector<VarId> rplus, rminus;
};

// p'_i equals p_i for members and p_tilde otherwise. The sum (p_tilde = 0)
// gives sum/mean statistics; the median uses p_tilde = max upper bound.
inline StatisticsHandles encode_statistics(ModelBuilder& b, const std::string& tag, const std::vector<VarId>& p,
                                           const SubsetGates& gates, Statistic which) {
  if (p.empty()) throw Error("statistics over an empty candidate set");
  const std::size_t nn = p.size();
  double lo_all = kInf, hi_all = -kInf;
  for (VarId v : p) {
    lo_all = std::min(lo_all, b.lower(v));
    hi_all = std::max(hi_all, b.upper(v));
  }
  const double tilde = which == Statistic::sum ? 0.0 : hi_all;
  StatisticsHandles h;
  for (std::size_t k = 0; k < nn; ++k) {
    const int i = static_cast<int>(k) + 1;
    const double lo = b.lower(p[k]), hi = b.upper(p[k]);
    const VarId pp = b.var(sym(tag + "_pp", {i}), VarKind::continuous, std::min(lo, tilde), std::max(hi, tilde));
    h.pprime.push_back(pp);
    if (gates.empty()) {
      b.row(sym(tag + "_pp", {i}), {{pp, 1}, {p[k], -1}}, Sense::eq, 0);
      continue;
    }
    for (std::size_t e = 0; e < gates.size(); ++e) {
      const VarId z = gates[e].at(k);
      const int ei = static_cast<int>(e) + 1;
      b.row(sym(tag + "_pp_a", {i, ei}), {{pp, 1}, {z, -(lo - tilde)}}, Sense::ge, tilde);
      b.row(sym(tag + "_pp_b", {i, ei}), {{pp, 1}, {z, -(hi - tilde)}}, Sense::le, tilde);
    }
    // (lo - tilde) * sum_e (1 - z^e) <= p - p' <= (hi - tilde) * sum_e (1 - z^e)
    const double ne = static_cast<double>(gates.size());
    std::vector<Term> c{{p[k], 1}, {pp, -1}}, d{{p[k], 1}, {pp, -1}};
    for (const auto& g : gates) {
      c.push_back({g.at(k), lo - tilde});
      d.push_back({g.at(k), hi - tilde});
    }
    b.row(sym(tag + "_pp_c", {i}), std::move(c), Sense::ge, (lo - tilde) * ne);
    b.row(sym(tag + "_pp_d", {i}), std::move(d), Sense::le, (hi - tilde) * ne);
  }
  if (which == Statistic::sum) return h;

  const VarId med = b.var(tag + "_median", VarKind::continuous, lo_all, hi_all);
  h.median = med;
  std::vector<Term> plus, minus;
  for (std::size_t k = 0; k < nn; ++k) {
    const int i = static_cast<int>(k) + 1;
    const VarId pp = h.pprime[k];
    const double lo = b.lower(pp), hi = b.upper(pp);
    const VarId rp = b.var(sym(tag + "_rp", {i}), VarKind::binary, 0, 1, kStructuralPriority);
    const VarId rm = b.var(sym(tag + "_rm", {i}), VarKind::binary, 0, 1, kStructuralPriority);
    b.row(sym(tag + "_rp_lo", {i}), {{pp, 1}, {med, -1}, {rp, -(lo - hi_all)}}, Sense::ge, 0);
    b.row(sym(tag + "_rp_hi", {i}), {{pp, 1}, {med, -1}, {rp, hi - lo_all}}, Sense::le, hi - lo_all);
    b.row(sym(tag + "_rm_hi", {i}), {{pp, 1}, {med, -1}, {rm, -(hi - lo_all)}}, Sense::le, 0);
    b.row(sym(tag + "_rm_lo", {i}), {{pp, 1}, {med, -1}, {rm, lo - hi_all}}, Sense::ge, lo - hi_all);
    if (!gates.empty()) {
      std::vector<Term> tp{{rp, 1}}, tm{{rm, 1}};
      double rp_rhs = 0.0, rm_rhs = 1.0;
      detail::add_gate(tp, rp_rhs, gates, k, -1.0);
      detail::add_gate(tm, rm_rhs, gates, k, 1.0);
      b.row(sym(tag + "_rp_gate", {i}), std::move(tp), Sense::le, rp_rhs);
      b.row(sym(tag + "_rm_gate", {i}), std::move(tm), Sense::ge, rm_rhs);
    }
    h.rplus.push_back(rp);
    h.rminus.push_back(rm);
    plus.push_back({rp, 2});
    minus.push_back({rm, 2});
  }
  // Counting rows with S = number of members.
  std::vector<Term> members;
  double members_const = 0.0;
  for (std::size_t k = 0; k < nn; ++k) detail::add_gate(members, members_const, gates, k, 1.0);
  members_const = -members_const;  // S = sum(members terms) + members_const
  auto with = [](std::vector<Term> a, const std::vector<Term>& extra, double scale) {
    for (const auto& t : extra) a.push_back({t.var, t.coef * scale});
    return a;
  };
  const double two_n = 2.0 * static_cast<double>(nn);
  b.row(tag + "_rp_count_lo", with(plus, members, -1), Sense::ge, members_const);
  b.row(tag + "_rp_count_hi", with(plus, members, -1), Sense::le, 1 + members_const);
  b.row(tag + "_rm_count_lo", with(minus, members, 1), Sense::ge, two_n - members_const);
  b.row(tag + "_rm_count_hi", with(minus, members, 1), Sense::le, 1 + two_n - members_const);
  if (!gates.empty()) b.row(tag + "_nonempty", members, Sense::ge, 1 - members_const);
  return h;
}

// ---------------------------------------------------------------------------
// Neighbour degrees and degree classes

// psdn_i = sum of degrees of i's neighbours. Linear in x for a fixed degree
// sequence; otherwise through pdp_k_l = pd_l * x_kl.
inline void encode_neighbor_degree_sums(ModelBuilder& b, const DegreeSequence* fixed, int dl, int du) {
  if (!b.psdn.empty()) return;
  const int n = b.n();
  encode_degrees(b);
  const auto& reg = b.registry();
  if (fixed) {
    const double hi = (n - 1.0) * fixed->values.front();
    for (int i = 1; i <= n; ++i) {
      const VarId p = b.var(sym("psdn", {i}), VarKind::continuous, 0, hi);
      std::vector<Term> t{{p, 1}};
      for (int j = 1; j <= n; ++j)
        if (j != i) t.push_back({reg.edge(i, j), -static_cast<double>(fixed->values[j - 1])});
      b.row(sym("sdn", {i}), std::move(t), Sense::eq, 0);
      b.psdn.push_back(p);
    }
    return;
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<Term> t;
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      const VarId x = reg.edge(i, j);
      const VarId pp = b.var(sym("pdp", {i, j}), VarKind::continuous, 0, du);
      b.row(sym("pdp_a", {i, j}), {{pp, 1}, {x, -static_cast<double>(dl)}}, Sense::ge, 0);
      b.row(sym("pdp_b", {i, j}), {{pp, 1}, {x, -static_cast<double>(du)}}, Sense::le, 0);
      b.row(sym("pdp_c", {i, j}), {{b.pd[j - 1], 1}, {pp, -1}, {x, static_cast<double>(dl)}}, Sense::ge, dl);
      b.row(sym("pdp_d", {i, j}), {{b.pd[j - 1], 1}, {pp, -1}, {x, static_cast<double>(du)}}, Sense::le, du);
      t.push_back({pp, -1});
    }
    const VarId p = b.var(sym("psdn", {i}), VarKind::continuous, 0, static_cast<double>(du) * du);
    t.push_back({p, 1});
    b.row(sym("sdn", {i}), std::move(t), Sense::eq, 0);
    b.psdn.push_back(p);
  }
}

// z_q_i = 1 iff pd_i >= q, pnnd_q = nodes of degree q, psdnp_q_i = psdn_i for
// nodes of degree q (else 0). Degrees are confined to [dl, du].
inline void encode_degree_classes(ModelBuilder& b, int dl, int du, double epsilon, const std::vector<int>& sampled,
                                  const DegreeSequence* fixed = nullptr) {
  const int n = b.n();
  if (dl < 0 || du > n - 1 || dl > du) throw Error("degree class bounds out of range");
  if (!(epsilon > 0 && epsilon < 1)) throw Error("epsilon must lie in (0,1)");
  encode_degrees(b);
  if (b.class_hi < 0) {
    b.class_lo = dl;
    b.class_hi = du;
    for (VarId p : b.pd) b.model().set_bounds(p, dl, du);
    for (int q = dl; q <= du; ++q) {
      auto zs = encode_threshold_subset(b, "z_" + std::to_string(q), b.pd, q - epsilon);
      for (int i = 1; i <= n; ++i) b.z[{q, i}] = zs[i - 1];
    }
    // Degrees are integral, so the thresholds form a unary code of pd_i.
    // Redundant for integer points; tightens the relaxation.
    for (int i = 1; i <= n; ++i) {
      std::vector<Term> t{{b.pd[i - 1], 1}};
      for (int q = dl + 1; q <= du; ++q) {
        t.push_back({b.z[{q, i}], -1});
        b.row(sym("zmono_" + std::to_string(q), {i}), {{b.z[{q - 1, i}], 1}, {b.z[{q, i}], -1}}, Sense::ge, 0);
      }
      b.row(sym("zunary", {i}), std::move(t), Sense::eq, dl);
    }
    for (int q = dl; q <= du; ++q) {
      const VarId p = b.var(sym("pnnd", {q}), VarKind::continuous, 0, n);
      std::vector<Term> t{{p, 1}};
      for (int i = 1; i <= n; ++i) {
        t.push_back({b.z[{q, i}], -1});
        if (q < du) t.push_back({b.z[{q + 1, i}], 1});
      }
      b.row(sym("nnd", {q}), std::move(t), Sense::eq, 0);
      b.pnnd[q] = p;
    }
  } else if (b.class_lo != dl || b.class_hi != du) {
    throw Error("degree classes already encoded with a different range");
  }
  encode_neighbor_degree_sums(b, fixed, dl, du);
  const double big_m = fixed ? (n - 1.0) * fixed->values.front() : static_cast<double>(du) * du;
  for (int q : sampled) {
    if (q < dl || q > du) continue;
    for (int i = 1; i <= n; ++i) {
      if (b.psdnp.count({q, i})) continue;
      const VarId zq = b.z[{q, i}];
      const VarId pp = b.var(sym("psdnp", {q, i}), VarKind::continuous, 0, big_m);
      std::vector<Term> on{{pp, 1}, {zq, -big_m}}, off{{b.psdn[i - 1], 1}, {pp, -1}, {zq, big_m}};
      if (q < du) {
        const VarId zn = b.z[{q + 1, i}];
        on.push_back({zn, big_m});
        off.push_back({zn, -big_m});
      }
      b.row(sym("psdnp_on", {q, i}), std::move(on), Sense::le, 0);
      b.row(sym("psdnp_off", {q, i}), std::move(off), Sense::le, big_m);
      b.row(sym("psdnp_le", {q, i}), {{b.psdn[i - 1], 1}, {pp, -1}}, Sense::ge, 0);
      b.psdnp[{q, i}] = pp;
    }
  }
}

// ---------------------------------------------------------------------------
// Specifications

namespace detail {

struct SlackPair {
  std::optional<VarId> minus, plus;
};

inline SlackPair make_slacks(ModelBuilder& b, const std::string& base, std::initializer_list<int> idx,
                             double max_minus, double max_plus, std::vector<VarId>& group) {
  if (!b.slack_mode()) return {};
  SlackPair s;
  s.minus = b.var(sym(base + "_minus", idx), VarKind::continuous, 0, std::max(0.0, max_minus));
  s.plus = b.var(sym(base + "_plus", idx), VarKind::continuous, 0, std::max(0.0, max_plus));
  group.push_back(*s.minus);
  group.push_back(*s.plus);
  return s;
}

inline void with_slacks(std::vector<Term>& t, const SlackPair& s) {
  if (s.minus) t.push_back({*s.minus, 1});
  if (s.plus) t.push_back({*s.plus, -1});
}

// lo <= expr + s- - s+ <= hi
inline void band_rows(ModelBuilder& b, const std::string& name, std::vector<Term> expr, const SlackPair& s,
                      double lo, double hi) {
  with_slacks(expr, s);
  if (lo == hi) {
    b.row(name, std::move(expr), Sense::eq, lo);
    return;
  }
  b.row(name + "_lo", expr, Sense::ge, lo);
  b.row(name + "_hi", std::move(expr), Sense::le, hi);
}

// lo * B <= A + s- - s+ <= hi * B, for a strictly positive denominator B.
inline void fractional_rows(ModelBuilder& b, const std::string& name, const std::vector<Term>& num,
                            const std::vector<Term>& den, const SlackPair& s, double lo, double hi) {
  auto make = [&](double coef) {
    auto t = num;
    for (const auto& d : den) t.push_back({d.var, -coef * d.coef});
    with_slacks(t, s);
    return t;
  };
  if (lo == hi) {
    b.row(name, make(lo), Sense::eq, 0);
    return;
  }
  b.row(name + "_lo", make(lo), Sense::ge, 0);
  b.row(name + "_hi", make(hi), Sense::le, 0);
}

inline std::vector<Term> sum_of(const std::vector<VarId>& v) {
  std::vector<Term> t;
  for (VarId id : v) t.push_back({id, 1});
  return t;
}

}  // namespace detail

inline void ensure_all_paths(ModelBuilder& b) {
  if (b.w.size() != static_cast<std::size_t>(b.n()) * (b.n() - 1) / 2) encode_shortest_paths(b, all_pairs(b.n()));
}

// Emits the rows for one specification and returns its slack variables
// (empty when the builder is in hard mode).
inline std::vector<VarId> add_specification(ModelBuilder& b, const NetworkSpec& spec, const PropertyConstraint& c) {
  using detail::band_rows;
  using detail::make_slacks;
  const int n = b.n();
  const DegreeSequence* fixed = spec.find<DegreeSequence>();
  std::vector<VarId> group;
  encode_degrees(b);

  if (auto d = std::get_if<DegreeBounds>(&c)) {
    int k = 0;
    for (const auto& other : spec.constraints) {
      if (std::holds_alternative<DegreeBounds>(other)) ++k;
      if (&other == &c) break;
    }
    const std::string base = "sdb" + std::to_string(k);
    for (int i = 1; i <= n; ++i) {
      if (!d->nodes.empty() && std::find(d->nodes.begin(), d->nodes.end(), i) == d->nodes.end()) continue;
      auto s = make_slacks(b, base, {i}, d->lo - b.lower(b.pd[i - 1]), b.upper(b.pd[i - 1]) - d->hi, group);
      band_rows(b, sym("degbound" + std::to_string(k), {i}), {{b.pd[i - 1], 1}}, s, d->lo, d->hi);
    }
  } else if (auto d = std::get_if<DegreeSequence>(&c)) {
    for (int i = 1; i <= n; ++i) {
      const double v = d->values[i - 1];
      auto s = make_slacks(b, "sd", {i}, v - b.lower(b.pd[i - 1]), b.upper(b.pd[i - 1]) - v, group);
      band_rows(b, sym("degseq", {i}), {{b.pd[i - 1], 1}}, s, v, v);
    }
  } else if (auto sb = std::get_if<ScalarBand>(&c)) {
    const Band band = sb->band;
    switch (sb->property) {
      case ScalarProperty::avg_cc: {
        encode_clustering(b, fixed, {true, false});
        auto s = make_slacks(b, "sacc", {}, band.lo, b.upper(*b.pacc) - band.hi, group);
        band_rows(b, "spec_acc", {{*b.pacc, 1}}, s, band.lo, band.hi);
        break;
      }
      case ScalarProperty::global_cc: {
        encode_clustering(b, fixed, {false, true});
        if (fixed) {
          auto s = make_slacks(b, "sgcc", {}, band.lo, b.upper(*b.pgcc) - band.hi, group);
          band_rows(b, "spec_gcc", {{*b.pgcc, 1}}, s, band.lo, band.hi);
          break;
        }
        const double max_paths = n * choose2(n - 1);
        auto s = make_slacks(b, "sgcc", {}, band.lo * max_paths, max_paths, group);
        detail::fractional_rows(b, "spec_gcc", detail::sum_of(b.pntr), detail::sum_of(b.pntp), s, band.lo,
                                band.hi);
        std::vector<Term> guard = detail::sum_of(b.pntp);
        if (b.slack_mode()) {
          const VarId g = b.var("sgcc_guard", VarKind::continuous, 0, 1);
          group.push_back(g);
          guard.push_back({g, 1});
        }
        b.row("spec_gcc_guard", std::move(guard), Sense::ge, 1);
        break;
      }
      case ScalarProperty::apl: {
        ensure_all_paths(b);
        encode_path_statistics(b, {true, false, false});
        auto s = make_slacks(b, "sapl", {}, band.lo - 1, n - 1 - band.hi, group);
        band_rows(b, "spec_apl", {{*b.papl, 1}}, s, band.lo, band.hi);
        break;
      }
      case ScalarProperty::cpl: {
        ensure_all_paths(b);
        encode_path_statistics(b, {false, true, false});
        auto s = make_slacks(b, "scpl", {}, band.lo - 1, n - 1 - band.hi, group);
        band_rows(b, "spec_cpl", {{*b.pcpl, 1}}, s, band.lo, band.hi);
        break;
      }
      case ScalarProperty::diameter: {
        ensure_all_paths(b);
        // Upper band on every pair, lower band on at least one pair (psi).
        std::optional<VarId> sm, sp;
        if (b.slack_mode()) {
          sm = b.var("sD_minus", VarKind::continuous, 0, std::max(0.0, band.lo - 1));
          sp = b.var("sD_plus", VarKind::continuous, 0, std::max(0.0, n - 1 - band.hi));
          group.push_back(*sm);
          group.push_back(*sp);
        }
        std::vector<Term> any;
        for (auto& [key, w] : b.w) {
          auto [i, j] = key;
          std::vector<Term> up{{w, 1}};
          if (sp) up.push_back({*sp, -1});
          b.row(sym("diam_hi", {i, j}), std::move(up), Sense::le, band.hi);
          const VarId psi = b.var(sym("psi", {i, j}), VarKind::binary, 0, 1, kStructuralPriority);
          std::vector<Term> lo{{w, 1}, {psi, -(band.lo - 1)}};
          if (sm) lo.push_back({*sm, 1});
          b.row(sym("diam_lo", {i, j}), std::move(lo), Sense::ge, 1);
          any.push_back({psi, 1});
        }
        b.row("diam_any", std::move(any), Sense::ge, 1);
        break;
      }
    }
  } else if (auto cs = std::get_if<ClosenessSequence>(&c)) {
    ensure_all_paths(b);
    encode_path_statistics(b, {false, false, true});
    std::vector<Band> inv;
    double max_lo = 0.0, min_hi = kInf;
    for (const auto& band : cs->bands) {
      inv.push_back(detail::inverse_band(band));
      max_lo = std::max(max_lo, inv.back().lo);
      min_hi = std::min(min_hi, inv.back().hi);
    }
    std::vector<std::pair<VarId, VarId>> slacks;
    for (int i = 1; i <= n; ++i) {
      auto s = make_slacks(b, "siclc", {i}, max_lo - 1, n / 2.0 - min_hi, group);
      if (s.minus) slacks.emplace_back(*s.minus, *s.plus);
    }
    encode_sequence_assignment(b, "q", b.piclc, inv, {}, slacks.empty() ? nullptr : &slacks);
  } else if (auto a = std::get_if<AdnByDegree>(&c)) {
    auto [dl, du] = degree_range(spec);
    std::vector<int> sampled;
    for (const auto& [q, band] : a->bands) sampled.push_back(q);
    encode_degree_classes(b, dl, du, spec.epsilon, sampled, fixed);
    for (const auto& [q, band] : a->bands) {
      if (q < dl || q > du) continue;
      std::vector<Term> num;
      for (int i = 1; i <= n; ++i) num.push_back({b.psdnp.at({q, i}), 1});
      const double max_sum = n * b.upper(b.psdnp.at({q, 1}));
      auto s = make_slacks(b, "sadn", {q}, band.lo * q * n, max_sum, group);
      detail::fractional_rows(b, sym("spec_adn", {q}), num, {{b.pnnd.at(q), static_cast<double>(q)}}, s, band.lo,
                              band.hi);
    }
  } else if (auto span = std::get_if<MinDegreeSpan>(&c)) {
    if (!spec.symmetry.primary || fixed)
      throw Error("min_degree_span needs primary symmetry breaking without a degree sequence");
    b.row("degree_span", {{b.pd.front(), 1}, {b.pd.back(), -1}}, Sense::ge, span->span);
  } else {
    if (spec.symmetry.primary && !fixed) {
      b.row("non_null", {{b.pd.front(), 1}}, Sense::ge, 1);
    } else {
      b.row("non_null", detail::sum_of(b.registry().edges()), Sense::ge, 1);
    }
  }
  if (!group.empty()) b.registry().slack_groups().push_back({describe(c), group});
  return group;
}

// ---------------------------------------------------------------------------
// Symmetry breaking

inline std::vector<VarId> secondary_values(ModelBuilder& b, const NetworkSpec& spec, SecondaryCriterion c) {
  const int n = b.n();
  const DegreeSequence* fixed = spec.find<DegreeSequence>();
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  switch (c) {
    case SecondaryCriterion::local_cc:
      encode_clustering(b, fixed, {true, false});
      return b.pcc;
    case SecondaryCriterion::dist_to_last: {
      if (b.w.size() != pairs) throw Error("dist_to_last symmetry breaking needs a path-based specification");
      std::vector<VarId> out;
      for (int i = 1; i < n; ++i) out.push_back(w_of(b, i, n));
      return out;
    }
    case SecondaryCriterion::sdn: {
      auto [dl, du] = degree_range(spec);
      encode_neighbor_degree_sums(b, fixed, dl, du);
      return b.psdn;
    }
    case SecondaryCriterion::inverse_closeness:
      if (b.w.size() != pairs) throw Error("inverse_closeness symmetry breaking needs a path-based specification");
      encode_path_statistics(b, {false, false, true});
      return b.piclc;
    case SecondaryCriterion::none: break;
  }
  return {};
}

inline double secondary_big_m(const ModelBuilder& b, const NetworkSpec& spec, SecondaryCriterion c) {
  const int n = b.n();
  switch (c) {
    case SecondaryCriterion::local_cc: return 1.0;
    case SecondaryCriterion::dist_to_last: return n - 2.0;
    case SecondaryCriterion::sdn: {
      const double du = degree_range(spec).second;
      return du * du;
    }
    case SecondaryCriterion::inverse_closeness: return n / 2.0 - 1.0;
    case SecondaryCriterion::none: break;
  }
  return 0.0;
}

inline void add_symmetry_breaking(ModelBuilder& b, const NetworkSpec& spec, const SymmetryConfig& cfg) {
  const int n = b.n();
  const DegreeSequence* fixed = spec.find<DegreeSequence>();
  if (!cfg.primary && cfg.secondary == SecondaryCriterion::none) return;
  if (!cfg.primary && !fixed) throw Error("secondary symmetry breaking needs primary degree ordering");
  for (const auto& c : spec.constraints)
    if (auto d = std::get_if<DegreeBounds>(&c); d && !d->nodes.empty())
      throw Error("symmetry breaking cannot be combined with node-specific degree bounds");
  encode_degrees(b);
  const bool reversed = cfg.secondary == SecondaryCriterion::inverse_closeness;
  auto pp = secondary_values(b, spec, cfg.secondary);

  if (fixed) {
    for (std::size_t k = 0; k + 1 < pp.size(); ++k) {
      if (fixed->values[k] != fixed->values[k + 1]) continue;
      const int i = static_cast<int>(k) + 1;
      const double s = reversed ? -1.0 : 1.0;
      b.row(sym("sym2", {i}), {{pp[k], s}, {pp[k + 1], -s}}, Sense::ge, 0);
    }
    return;
  }
  for (int i = 1; i < n; ++i) b.row(sym("sym1", {i}), {{b.pd[i - 1], 1}, {b.pd[i], -1}}, Sense::ge, 0);
  if (pp.empty()) return;
  const double big_m = secondary_big_m(b, spec, cfg.secondary);
  for (std::size_t k = 0; k + 1 < pp.size(); ++k) {
    const int i = static_cast<int>(k) + 1;
    const double s = reversed ? -1.0 : 1.0;
    b.row(sym("sym2", {i}), {{b.pd[k], big_m}, {b.pd[k + 1], -big_m}, {pp[k], s}, {pp[k + 1], -s}}, Sense::ge, 0);
  }
}

// ---------------------------------------------------------------------------
// Complete formulation

struct Formulation {
  MilpModel model;
  VariableRegistry registry;
};

inline VarId objective_variable(ModelBuilder& b, const NetworkSpec& spec) {
  const DegreeSequence* fixed = spec.find<DegreeSequence>();
  switch (spec.objective.property) {
    case ScalarProperty::avg_cc:
      encode_clustering(b, fixed, {true, false});
      return *b.pacc;
    case ScalarProperty::global_cc:
      if (!fixed) throw Error("a global_cc objective needs a degree sequence (the ratio is otherwise nonlinear)");
      encode_clustering(b, fixed, {false, true});
      return *b.pgcc;
    case ScalarProperty::apl:
      ensure_all_paths(b);
      encode_path_statistics(b, {true, false, false});
      return *b.papl;
    case ScalarProperty::cpl:
      ensure_all_paths(b);
      encode_path_statistics(b, {false, true, false});
      return *b.pcpl;
    case ScalarProperty::diameter: break;
  }
  throw Error("diameter is not supported as an objective");
}

inline Formulation build(const NetworkSpec& spec, bool binary_flows = true) {
  validate(spec);
  const bool slack_mode = spec.objective.mode == ObjectiveMode::min_slack;
  ModelBuilder b(spec.n, spec.motif_mode, slack_mode);
  encode_edges(b, spec.n);
  encode_degrees(b);
  if (requires_connectivity(spec)) encode_shortest_paths(b, all_pairs(spec.n), binary_flows);
  for (const auto& c : spec.constraints) add_specification(b, spec, c);
  add_symmetry_breaking(b, spec, spec.symmetry);
  if (slack_mode) {
    b.model().set_objective(ObjSense::minimize, detail::sum_of(b.registry().all_slacks()));
  } else {
    const VarId v = objective_variable(b, spec);
    b.model().set_objective(spec.objective.mode == ObjectiveMode::maximize ? ObjSense::maximize : ObjSense::minimize,
                            {{v, 1}});
  }
  return {std::move(b.model()), std::move(b.registry())};
}

}  // namespace netgen
