#pragma once

// Branch and bound over the dual simplex, solution enumeration with
// isomorphism rejection, and import of solutions produced elsewhere.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "netgen/formulation.hpp"
#include "netgen/graph.hpp"
#include "netgen/milp.hpp"
#include "netgen/propagate.hpp"
#include "netgen/simplex.hpp"
#include "netgen/spec.hpp"

namespace netgen {

enum class SolveStatus { optimal, infeasible, limit_reached };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::limit_reached: return "limit_reached";
  }
  return "?";
}

struct SolveStats {
  long nodes = 0;
  long simplex_iterations = 0;
  long numerical_failures = 0;
  double wall_seconds = 0.0;
};

struct SlackEntry {
  std::string constraint;
  double deviation = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<double> objective;  // best solution found
  double best_bound = 0.0;
  std::vector<double> values;  // model order
  std::map<std::string, double> assignment;
  std::vector<Graph> graphs;
  std::vector<SlackEntry> slack_report;
  SolveStats stats;

  [[nodiscard]] bool has_solution() const { return objective.has_value(); }
  [[nodiscard]] double total_slack() const {
    double s = 0.0;
    for (const auto& e : slack_report) s += e.deviation;
    return s;
  }
};

namespace detail {

struct BbNode {
  std::vector<std::pair<VarId, bool>> fixes;  // binary fixed to 0 / 1
  double bound = -kInf;                       // internal (minimisation) sense
  int depth = 0;
  long seq = 0;
};

class BranchAndBound {
 public:
  using Clock = std::chrono::steady_clock;

  BranchAndBound(const MilpModel& model, const SolveOptions& opt, double cutoff,
                 const std::vector<double>* start = nullptr)
      : model_(model), opt_(opt), start_(Clock::now()) {
    sign_ = model.objective().sense == ObjSense::maximize ? -1.0 : 1.0;
    deadline_ = opt.time_limit_s > 0
                    ? start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opt.time_limit_s))
                    : Clock::time_point::max();
    for (VarId v = 0; v < model.num_variables(); ++v) {
      const auto& var = model.variable(v);
      root_lo_.push_back(var.lower);
      root_hi_.push_back(var.upper);
      if (var.kind == VarKind::binary && var.lower != var.upper &&
          (var.branch_priority >= 0 || opt.branch_flows))
        integer_.push_back(v);
    }
    // A finite cutoff acts as an incumbent that is never reported.
    if (std::isfinite(cutoff)) incumbent_value_ = sign_ * cutoff + opt.abs_gap;
    if (start) offer_start(*start);
    prop_lo_ = root_lo_;
    prop_hi_ = root_hi_;
    if (BoundPropagator(model).run(prop_lo_, prop_hi_)) pool_.push_back(BbNode{{}, -kInf, 0, next_seq_++});
  }

  void run() {
    const int workers = opt_.deterministic ? 1 : std::max(1, opt_.worker_count);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (int i = 0; i < workers; ++i) threads.emplace_back([this] { worker(); });
      for (auto& t : threads) t.join();
    }
  }

  // Takes a complete assignment as the incumbent if it satisfies every row
  // and bound and its binaries are integral.
  bool offer_start(const std::vector<double>& x) {
    if (x.size() != model_.num_variables()) return false;
    auto y = x;
    for (VarId v = 0; v < y.size(); ++v)
      if (model_.variable(v).kind == VarKind::binary) {
        if (std::abs(y[v] - std::round(y[v])) > opt_.integrality_tol) return false;
        y[v] = std::round(y[v]);
      }
    if (model_.max_violation(y).first > 1e-5) return false;
    const double value = sign_ * model_.objective_value(y);
    if (value >= incumbent_value_) return false;
    incumbent_value_ = value;
    incumbent_x_ = std::move(y);
    start_accepted_ = true;
    return true;
  }
  [[nodiscard]] bool start_accepted() const { return start_accepted_; }

  SolveResult result() const {
    SolveResult r;
    r.stats = stats_;
    r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    double bound = incumbent_x_.empty() ? kInf : incumbent_value_;
    for (const auto& n : pool_) bound = std::min(bound, n.bound);
    r.best_bound = sign_ * bound;
    if (!incumbent_x_.empty()) {
      r.objective = sign_ * incumbent_value_;
      r.values = incumbent_x_;
      for (VarId v = 0; v < model_.num_variables(); ++v) r.assignment[model_.variable(v).name] = r.values[v];
    }
    if (stopped_ || stats_.numerical_failures > 0)
      r.status = SolveStatus::limit_reached;
    else
      r.status = incumbent_x_.empty() ? SolveStatus::infeasible : SolveStatus::optimal;
    return r;
  }

 private:
  bool limits_hit() {
    if (Clock::now() > deadline_) return true;
    if (opt_.node_limit >= 0 && stats_.nodes >= opt_.node_limit) return true;
    return false;
  }

  // Next node: deepest first until there is an incumbent, then best bound.
  bool take(BbNode& out) {
    if (pool_.empty()) return false;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool_.size(); ++i) {
      const auto& a = pool_[i];
      const auto& b = pool_[best];
      const bool better = incumbent_x_.empty()
                              ? (a.depth > b.depth || (a.depth == b.depth && a.seq > b.seq))
                              : (a.bound < b.bound || (a.bound == b.bound && (a.depth > b.depth ||
                                                                              (a.depth == b.depth && a.seq > b.seq))));
      if (better) best = i;
    }
    out = std::move(pool_[best]);
    pool_[best] = std::move(pool_.back());
    pool_.pop_back();
    return true;
  }

  [[nodiscard]] double min_pool_bound() const {
    double b = kInf;
    for (const auto& n : pool_) b = std::min(b, n.bound);
    return b;
  }

  std::optional<VarId> branching_variable(const std::vector<double>& x) const {
    std::optional<VarId> best;
    int best_pri = 0;
    double best_frac = 0.0;
    for (VarId v : integer_) {
      const double f = x[v] - std::floor(x[v]);
      const double dist = std::min(f, 1.0 - f);
      if (dist <= opt_.integrality_tol) continue;
      const int pri = opt_.branching == Branching::priority_most_fractional ? model_.variable(v).branch_priority : 0;
      if (!best || pri > best_pri || (pri == best_pri && dist > best_frac + 1e-12)) {
        best = v;
        best_pri = pri;
        best_frac = dist;
      }
    }
    return best;
  }

  void worker() {
    DualSimplex lp(model_);
    BoundPropagator prop(model_);
    std::vector<double> lo, hi;
    std::vector<VarId> fixed;
    std::optional<BbNode> plunge;
    for (;;) {
      BbNode node;
      {
        std::unique_lock lock(mu_);
        if (plunge) {
          node = std::move(*plunge);
          plunge.reset();
        } else {
          cv_.wait(lock, [&] { return !pool_.empty() || active_ == 0 || stopped_; });
          if (stopped_ || (pool_.empty() && active_ == 0)) {
            cv_.notify_all();
            return;
          }
          take(node);
        }
        if (limits_hit()) {
          stopped_ = true;
          pool_.push_back(std::move(node));
          cv_.notify_all();
          return;
        }
        if (node.bound >= incumbent_value_ - opt_.abs_gap) continue;
        ++active_;
        ++stats_.nodes;
      }

      lo = prop_lo_;
      hi = prop_hi_;
      fixed.clear();
      for (auto [v, one] : node.fixes) {
        if (one)
          lo[v] = 1.0;
        else
          hi[v] = 0.0;
        fixed.push_back(v);
      }
      if (!prop.run(lo, hi, fixed)) {
        std::lock_guard lock(mu_);
        --active_;
        trace(node, "propagated", 0);
        cv_.notify_all();
        continue;
      }
      // Only binary fixings reach the LP; continuous bounds stay at the root's.
      for (VarId v = 0; v < lo.size(); ++v)
        if (model_.variable(v).kind != VarKind::binary) {
          lo[v] = root_lo_[v];
          hi[v] = root_hi_[v];
        }
      lp.set_bounds(lo, hi);
      const long it0 = lp.iterations();
      double cutoff;
      {
        std::lock_guard lock(mu_);
        cutoff = std::isfinite(incumbent_value_) ? sign_ * (incumbent_value_ - opt_.abs_gap) : kInf;
      }
      auto res = lp.solve(cutoff, deadline_);
      if (res.status == LpStatus::numerical || res.status == LpStatus::iteration_limit) {
        lp.reset_basis();
        res = lp.solve(cutoff, deadline_);
      }

      std::lock_guard lock(mu_);
      --active_;
      stats_.simplex_iterations += lp.iterations() - it0;
      if (res.status == LpStatus::time_limit) {
        stopped_ = true;
        pool_.push_back(std::move(node));
        cv_.notify_all();
        return;
      }
      if (res.status == LpStatus::numerical || res.status == LpStatus::iteration_limit) {
        ++stats_.numerical_failures;
        cv_.notify_all();
        continue;
      }
      if (res.status != LpStatus::optimal) {
        trace(node, "pruned", lp.iterations() - it0);
        cv_.notify_all();
        continue;
      }
      const double value = sign_ * res.objective;
      const double lp_bound = sign_ * res.bound;
      if (lp_bound >= incumbent_value_ - opt_.abs_gap) {
        trace(node, "bounded", lp.iterations() - it0);
        cv_.notify_all();
        continue;
      }
      const auto branch = branching_variable(res.x);
      if (!branch) {
        if (value >= incumbent_value_ - opt_.abs_gap) {
          trace(node, "bounded", lp.iterations() - it0);
          cv_.notify_all();
          continue;
        }
        auto x = res.x;
        for (VarId v : integer_) x[v] = std::round(x[v]);
        incumbent_value_ = value;
        incumbent_x_ = std::move(x);
        if (opt_.verbosity >= 1)
          std::cerr << "[netgen] incumbent " << sign_ * value << " after " << stats_.nodes << " nodes\n";
        cv_.notify_all();
        continue;
      }
      const bool up_first = res.x[*branch] >= 0.5;
      BbNode first{node.fixes, lp_bound, node.depth + 1, next_seq_++};
      BbNode second{node.fixes, lp_bound, node.depth + 1, next_seq_++};
      first.fixes.emplace_back(*branch, up_first);
      second.fixes.emplace_back(*branch, !up_first);
      trace(node, "branch " + model_.variable(*branch).name, lp.iterations() - it0);
      pool_.push_back(std::move(second));
      const double pool_min = min_pool_bound();
      const bool dive = incumbent_x_.empty() || lp_bound <= pool_min + 0.25 * (incumbent_value_ - pool_min) + 1e-12;
      if (dive)
        plunge = std::move(first);
      else
        pool_.push_back(std::move(first));
      cv_.notify_all();
    }
  }

  void trace(const BbNode& node, const std::string& what, long pivots) const {
    if (opt_.verbosity >= 2)
      std::cerr << "[netgen] node depth " << node.depth << " bound " << sign_ * node.bound << " pivots " << pivots
                << ": " << what << "\n";
  }

  const MilpModel& model_;
  SolveOptions opt_;
  double sign_ = 1.0;
  Clock::time_point start_, deadline_;
  std::vector<double> root_lo_, root_hi_;
  std::vector<double> prop_lo_, prop_hi_;  // root bounds after propagation
  std::vector<VarId> integer_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<BbNode> pool_;
  long next_seq_ = 0;
  int active_ = 0;
  bool stopped_ = false;
  bool start_accepted_ = false;
  double incumbent_value_ = kInf;
  std::vector<double> incumbent_x_;
  SolveStats stats_;
};

}  // namespace detail

inline void fill_graph_report(SolveResult& r, const VariableRegistry& reg) {
  r.graphs.clear();
  r.slack_report.clear();
  if (!r.has_solution()) return;
  r.graphs.push_back(reg.extract_graph(r.values));
  for (const auto& g : reg.slack_groups()) {
    double s = 0.0;
    for (VarId v : g.vars) s += r.values[v];
    r.slack_report.push_back({g.constraint, s});
  }
}

// cutoff: only solutions strictly better than this value are of interest.
// start: optional complete assignment used as the first incumbent when it
// checks out against the model.
inline SolveResult solve(const MilpModel& model, const SolveOptions& opt, const VariableRegistry* reg = nullptr,
                         double cutoff = kInf, const std::vector<double>* start = nullptr) {
  for (const auto& v : model.variables())
    if (v.kind == VarKind::binary && (v.lower < 0 || v.upper > 1)) throw Error("binary without [0,1] bounds");
  detail::BranchAndBound bb(model, opt, cutoff, start);
  bb.run();
  auto r = bb.result();
  if (reg) fill_graph_report(r, *reg);
  return r;
}

inline SolveResult solve(const Formulation& f, const SolveOptions& opt) { return solve(f.model, opt, &f.registry); }

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerationResult {
  std::vector<Graph> graphs;
  bool unattainable = false;  // first solve had positive optimal slack
  SolveStatus last_status = SolveStatus::infeasible;
  long solves = 0;
  SolveStats stats;
};

// Adds sum_{x=1}(1-x) + sum_{x=0} x >= 1 over the edge variables.
inline void add_no_good_cut(MilpModel& m, const VariableRegistry& reg, const Graph& g, const std::string& name) {
  std::vector<Term> t;
  double ones = 0.0;
  for (int i = 1; i <= g.n(); ++i)
    for (int j = i + 1; j <= g.n(); ++j) {
      const bool on = g.has_edge(i, j);
      t.push_back({reg.edge(i, j), on ? -1.0 : 1.0});
      ones += on;
    }
  m.add_linear_constraint(name, std::move(t), Sense::ge, 1.0 - ones);
}

// Distinct relabelings of g accepted by `keep` (n <= 7; larger graphs only
// themselves).
inline std::vector<Graph> relabelings(const Graph& g, const std::function<bool(const Graph&)>& keep) {
  const int n = g.n();
  if (n > 7) return {g};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Graph> out;
  do {
    Graph h(n);
    for (auto [a, b] : g.edges()) h.add_edge(perm[a - 1], perm[b - 1]);
    if (seen.insert(h.edges()).second && keep(h)) out.push_back(std::move(h));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Up to k non-isomorphic zero-deviation graphs. Without `admissible` each
// find cuts only its own labeling, so other labelings of the same class come
// back and are skipped. With it, every relabeling it accepts is cut at once;
// it must accept at least the labelings the model can reach.
inline EnumerationResult enumerate_nonisomorphic(const MilpModel& model, const VariableRegistry& reg, std::size_t k,
                                                 const SolveOptions& opt,
                                                 const std::function<bool(const Graph&)>& admissible = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  EnumerationResult out;
  MilpModel work = model;
  std::set<std::string> keys;
  while (out.graphs.size() < k) {
    SolveOptions o = opt;
    if (opt.time_limit_s > 0) {
      o.time_limit_s = opt.time_limit_s - std::chrono::duration<double>(Clock::now() - start).count();
      if (o.time_limit_s <= 0) {
        out.last_status = SolveStatus::limit_reached;
        break;
      }
    }
    auto r = solve(work, o, &reg, out.solves == 0 ? kInf : opt.abs_gap);
    ++out.solves;
    out.stats.nodes += r.stats.nodes;
    out.stats.simplex_iterations += r.stats.simplex_iterations;
    out.last_status = r.status;
    if (r.status != SolveStatus::optimal || !r.has_solution()) break;
    if (*r.objective > opt.abs_gap) {
      if (out.solves == 1) out.unattainable = true;
      break;
    }
    const Graph g = r.graphs.front();
    if (keys.insert(canonical_key(g)).second) out.graphs.push_back(g);
    if (admissible) {
      int c = 0;
      for (const auto& h : relabelings(g, admissible))
        add_no_good_cut(work, reg, h, "nogood_" + std::to_string(out.solves) + "_" + std::to_string(c++));
      if (c == 0) add_no_good_cut(work, reg, g, "nogood_" + std::to_string(out.solves));
    } else {
      add_no_good_cut(work, reg, g, "nogood_" + std::to_string(out.solves));
    }
  }
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Import

// Verifies an externally produced assignment. Binary values must be present;
// missing continuous values are recovered by an LP with the binaries fixed.
inline SolveResult import_solution(const MilpModel& model, const VariableRegistry& reg, const std::string& text,
                                   double tolerance = 1e-5) {
  const auto pairs = parse_solution_text(text);
  std::vector<std::optional<double>> given(model.num_variables());
  for (const auto& [name, value] : pairs) {
    const auto id = model.find(name);
    if (!id) throw Error("solution names unknown variable " + name);
    given[*id] = value;
  }
  std::vector<double> x(model.num_variables(), 0.0);
  bool missing_continuous = false;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    const auto& var = model.variable(v);
    if (!given[v]) {
      if (var.kind == VarKind::binary) throw Error("solution is missing binary variable " + var.name);
      missing_continuous = true;
      continue;
    }
    x[v] = *given[v];
    if (var.kind == VarKind::binary) {
      const double r = std::round(x[v]);
      if (std::abs(x[v] - r) > tolerance) throw Error("binary variable " + var.name + " is not integral");
      x[v] = r;
    }
  }
  if (missing_continuous) {
    std::vector<double> lo, hi;
    for (VarId v = 0; v < model.num_variables(); ++v) {
      const auto& var = model.variable(v);
      const bool fix = var.kind == VarKind::binary && var.branch_priority >= 0;
      lo.push_back(fix ? x[v] : var.lower);
      hi.push_back(fix ? x[v] : var.upper);
    }
    const auto lp = solve_relaxation(model, lo, hi);
    if (lp.status != LpStatus::optimal) throw Error("no continuous completion exists for the given binaries");
    for (VarId v = 0; v < model.num_variables(); ++v)
      if (!given[v]) x[v] = lp.x[v];
  }
  const auto [viol, who] = model.max_violation(x);
  if (viol > tolerance) throw Error("solution violates " + who + " by " + std::to_string(viol));
  SolveResult r;
  r.status = SolveStatus::optimal;
  r.objective = model.objective_value(x);
  r.best_bound = *r.objective;
  r.values = x;
  for (VarId v = 0; v < model.num_variables(); ++v) r.assignment[model.variable(v).name] = x[v];
  fill_graph_report(r, reg);
  return r;
}

}  // namespace netgen
