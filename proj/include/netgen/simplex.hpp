#pragma once

// Bounded-variable dual simplex on a dense tableau.
//
// Every row gets a logical column r_i = a_i x with finite bounds, so all
// columns are boxed. Any basis is then dual feasible once each nonbasic column
// sits at the bound matching the sign of its reduced cost, which lets branch
// and bound warm-start every node from whatever basis is current.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "netgen/milp.hpp"

namespace netgen {

enum class LpStatus { optimal, infeasible, cutoff, iteration_limit, time_limit, numerical };

struct LpResult {
  LpStatus status = LpStatus::numerical;
  double objective = 0.0;  // in the model's own sense
  double bound = 0.0;      // valid bound on the optimum, same sense
  std::vector<double> x;   // structural values, model order
  long iterations = 0;
};

struct LpOptions {
  double primal_tol = 1e-7;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  long max_iterations = 200000;
  long refactor_interval = 4000;
  std::size_t max_tableau_entries = 80'000'000;
  double perturbation = 1e-7;
};

class DualSimplex {
 public:
  using Clock = std::chrono::steady_clock;

  explicit DualSimplex(const MilpModel& model, LpOptions opts = {}) : model_(model), opts_(opts) {
    sign_ = model.objective().sense == ObjSense::maximize ? -1.0 : 1.0;
    const std::size_t n = model.num_variables();
    // Columns fixed in the model are folded into the row bounds.
    col_of_var_.assign(n, npos);
    for (VarId v = 0; v < n; ++v) {
      const auto& var = model.variable(v);
      if (!std::isfinite(var.lower) || !std::isfinite(var.upper))
        throw Error("dense simplex needs finite bounds on " + var.name);
      if (var.lower == var.upper) continue;
      col_of_var_[v] = var_of_col_.size();
      var_of_col_.push_back(v);
    }
    ns_ = var_of_col_.size();
    implied_lo_.assign(ns_, -kInf);
    implied_hi_.assign(ns_, kInf);
    // Rows left with one free column are bounds on it; rows with none are
    // checked once. Neither takes a tableau row.
    std::vector<RowId> kept;
    for (RowId r = 0; r < model.num_constraints(); ++r) {
      const auto& row = model.constraints()[r];
      double shift = 0.0;
      std::size_t free_terms = 0;
      const Term* only = nullptr;
      for (const auto& t : row.terms) {
        if (col_of_var_[t.var] == npos) {
          shift += t.coef * model.variable(t.var).lower;
        } else if (t.coef != 0.0) {
          ++free_terms;
          only = &t;
        }
      }
      const double rhs = row.rhs - shift;
      const double tol = 1e-9 * std::max(1.0, std::abs(row.rhs));
      if (free_terms == 0) {
        const bool ok = row.sense == Sense::le ? 0.0 <= rhs + tol
                        : row.sense == Sense::ge ? 0.0 >= rhs - tol
                                                 : std::abs(rhs) <= tol;
        if (!ok) always_infeasible_ = true;
        continue;
      }
      if (free_terms == 1) {
        const std::size_t j = col_of_var_[only->var];
        const double v = rhs / only->coef;
        const bool flip = only->coef < 0;
        if (row.sense == Sense::eq || (row.sense == Sense::le) != flip) implied_hi_[j] = std::min(implied_hi_[j], v);
        if (row.sense == Sense::eq || (row.sense == Sense::ge) != flip) implied_lo_[j] = std::max(implied_lo_[j], v);
        continue;
      }
      kept.push_back(r);
    }
    m_ = kept.size();
    nc_ = ns_ + m_;
    if (static_cast<double>(m_) * static_cast<double>(nc_) > static_cast<double>(opts_.max_tableau_entries))
      throw Error("model too large for the dense tableau (" + std::to_string(m_) + " rows x " +
                  std::to_string(nc_) + " columns); export it and use an external solver");

    rows_.resize(m_);
    row_lo_.assign(m_, 0.0);
    row_hi_.assign(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& row = model.constraints()[kept[r]];
      double shift = 0.0, amin = 0.0, amax = 0.0;
      for (const auto& t : row.terms) {
        const auto& var = model.variable(t.var);
        if (col_of_var_[t.var] == npos) {
          shift += t.coef * var.lower;
          continue;
        }
        if (t.coef == 0.0) continue;
        const std::size_t j = col_of_var_[t.var];
        rows_[r].push_back({j, t.coef});
        const double l = std::max(var.lower, implied_lo_[j]), u = std::min(var.upper, implied_hi_[j]);
        amin += t.coef * (t.coef > 0 ? l : u);
        amax += t.coef * (t.coef > 0 ? u : l);
      }
      const double rhs = row.rhs - shift;
      double lo = amin, hi = amax;
      if (row.sense == Sense::le) hi = rhs;
      if (row.sense == Sense::ge) lo = rhs;
      if (row.sense == Sense::eq) lo = hi = rhs;
      // An empty activity range that misses rhs keeps lo <= hi; the LP will
      // come out infeasible on its own.
      if (row.sense == Sense::le) lo = std::min(lo, hi);
      if (row.sense == Sense::ge) hi = std::max(lo, hi);
      row_lo_[r] = lo;
      row_hi_[r] = hi;
    }

    lo_.resize(nc_);
    hi_.resize(nc_);
    base_lo_.resize(nc_);
    base_hi_.resize(nc_);
    for (std::size_t j = 0; j < ns_; ++j) {
      base_lo_[j] = std::max(model.variable(var_of_col_[j]).lower, implied_lo_[j]);
      base_hi_[j] = std::min(model.variable(var_of_col_[j]).upper, implied_hi_[j]);
      if (base_lo_[j] > base_hi_[j]) {
        if (base_lo_[j] > base_hi_[j] + 1e-9 * std::max(1.0, std::abs(base_hi_[j]))) always_infeasible_ = true;
        base_lo_[j] = base_hi_[j];
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      base_lo_[ns_ + r] = row_lo_[r];
      base_hi_[ns_ + r] = row_hi_[r];
    }
    lo_ = base_lo_;
    hi_ = base_hi_;
    load_objective(model.objective());
    reset_basis();
  }

  // Replaces the objective, keeping the basis for a warm start.
  void set_objective(ObjSense sense, const std::vector<Term>& terms, double constant = 0.0) {
    load_objective(Objective{sense, terms, constant});
  }

  // Structural bounds for the next solve, indexed by model variable. Fixed
  // model variables must keep their value.
  void set_bounds(const std::vector<double>& lower, const std::vector<double>& upper) {
    for (std::size_t j = 0; j < ns_; ++j) {
      lo_[j] = std::max(lower[var_of_col_[j]], implied_lo_[j]);
      hi_[j] = std::min(upper[var_of_col_[j]], implied_hi_[j]);
    }
    bounds_conflict_ = false;
    for (std::size_t j = 0; j < ns_; ++j)
      if (lo_[j] > hi_[j]) {
        if (lo_[j] > hi_[j] + 1e-9 * std::max(1.0, std::abs(hi_[j]))) {
          bounds_conflict_ = true;
          return;
        }
        lo_[j] = hi_[j];
      }
  }
  void reset_bounds() {
    lo_ = base_lo_;
    hi_ = base_hi_;
    bounds_conflict_ = false;
  }

  // Solve from the current basis. cutoff is in the model's sense: the solve
  // stops once the bound proves the optimum cannot beat it.
  LpResult solve(double cutoff = kInf, Clock::time_point deadline = Clock::time_point::max()) {
    LpResult res;
    if (bounds_conflict_ || always_infeasible_) {
      res.status = LpStatus::infeasible;
      return res;
    }
    start_iterations_ = iterations_;
    const double internal_cutoff = std::isfinite(cutoff) ? sign_ * (cutoff - obj_shift_) : kInf;
    bool perturbed = opts_.perturbation > 0.0;
    set_costs(perturbed ? pert_cost_ : true_cost_);
    long stall = 0;
    double last_obj = -kInf;
    bool bland = false;
    for (;;) {
      if (iter_since_refactor_ >= opts_.refactor_interval) refactor();
      const double obj = internal_objective();
      const double margin = 1e-9 * std::max(1.0, std::abs(internal_cutoff)) + (perturbed ? pert_bound_ : 0.0);
      if (obj > internal_cutoff + margin) {
        // Only trust the bound after a fresh factorization, net of any
        // remaining dual infeasibility.
        if (iter_since_refactor_ > 0) refactor();
        const double bound = dual_bound() - (perturbed ? pert_bound_ : 0.0);
        if (bound > internal_cutoff + 1e-9 * std::max(1.0, std::abs(internal_cutoff))) {
          res.status = LpStatus::cutoff;
          res.objective = res.bound = sign_ * bound + obj_shift_;
          res.iterations = iterations_;
          return res;
        }
      }
      if (obj > last_obj + 1e-12) {
        last_obj = obj;
        stall = 0;
        bland = false;
      } else if (++stall > 50) {
        bland = true;
      }

      const std::size_t r = choose_leaving(bland);
      if (r == npos) {
        // Confirm on a fresh primal computation before declaring optimality.
        compute_primal();
        if (choose_leaving(bland) != npos) continue;
        if (residual() > 1e-6) {
          if (refactored_at_end_) {
            res.status = LpStatus::numerical;
            return res;
          }
          refactor();
          refactored_at_end_ = true;
          continue;
        }
        refactored_at_end_ = false;
        if (perturbed) {
          perturbed = false;
          set_costs(true_cost_);
          last_obj = -kInf;
          continue;
        }
        res.status = LpStatus::optimal;
        res.objective = sign_ * internal_objective() + obj_shift_;
        res.bound = sign_ * std::min(internal_objective(), dual_bound()) + obj_shift_;
        res.x = structural_values();
        res.iterations = iterations_;
        return res;
      }
      const std::size_t basic = basis_[r];
      const bool below = xb_[r] < lo_[basic];
      const std::size_t q = choose_entering(r, below, bland);
      if (q == npos) {
        // The row cannot be moved back inside its bounds: check once on a
        // fresh factorization before trusting the infeasibility.
        if (!refactored_at_end_) {
          if (iter_since_refactor_ > 200)
            refactor();
          else
            compute_primal();
          refactored_at_end_ = true;
          continue;
        }
        refactored_at_end_ = false;
        res.status = LpStatus::infeasible;
        res.iterations = iterations_;
        return res;
      }
      refactored_at_end_ = false;
      pivot(r, q, below ? lo_[basic] : hi_[basic], below);
      ++iterations_;
      ++iter_since_refactor_;
      if (iterations_ % 64 == 0) {
        if (Clock::now() > deadline) {
          res.status = LpStatus::time_limit;
          res.iterations = iterations_;
          return res;
        }
      }
      if (iterations_ - start_iterations_ > opts_.max_iterations) {
        res.status = LpStatus::iteration_limit;
        res.iterations = iterations_;
        return res;
      }
    }
  }

  [[nodiscard]] long iterations() const { return iterations_; }

  // Back to the all-logical basis.
  void reset_basis() {
    tab_.assign(m_ * nc_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (auto [j, a] : rows_[r]) tab_[r * nc_ + j] = -a;
      tab_[r * nc_ + ns_ + r] = 1.0;
    }
    basis_.resize(m_);
    pos_.assign(nc_, npos);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = ns_ + r;
      pos_[ns_ + r] = r;
    }
    at_upper_.assign(nc_, false);
    reprice();
    xb_.assign(m_, 0.0);
    iter_since_refactor_ = 0;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  double* row_ptr(std::size_t r) { return tab_.data() + r * nc_; }

  [[nodiscard]] double value(std::size_t j) const {
    if (pos_[j] != npos) return xb_[pos_[j]];
    return at_upper_[j] ? hi_[j] : lo_[j];
  }

  void load_objective(const Objective& obj) {
    sign_ = obj.sense == ObjSense::maximize ? -1.0 : 1.0;
    cost_.assign(nc_, 0.0);
    for (const auto& t : obj.terms)
      if (col_of_var_[t.var] != npos) cost_[col_of_var_[t.var]] += sign_ * t.coef;
    true_cost_ = cost_;
    // Small deterministic cost perturbation against dual degeneracy; removed
    // before a solve reports optimal.
    pert_cost_ = cost_;
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t j = 0; j < nc_; ++j) {
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 29;
      const double u = static_cast<double>(h >> 11) / 9007199254740992.0;
      pert_cost_[j] += opts_.perturbation * (1.0 + std::abs(cost_[j])) * (0.5 + u) * (h & 1 ? 1.0 : -1.0);
    }
    obj_shift_ = obj.constant;
    for (const auto& t : obj.terms)
      if (col_of_var_[t.var] == npos) obj_shift_ += t.coef * model_.variable(t.var).lower;
    pert_bound_ = 0.0;
    for (std::size_t j = 0; j < nc_; ++j)
      pert_bound_ += std::abs(pert_cost_[j] - true_cost_[j]) * std::max(std::abs(base_lo_[j]), std::abs(base_hi_[j]));
    // Reduced costs follow on the next solve.
    if (!basis_.empty()) reprice();
  }

  void place_nonbasics() {
    for (std::size_t j = 0; j < nc_; ++j) {
      if (pos_[j] != npos) continue;
      if (d_[j] > opts_.dual_tol)
        at_upper_[j] = false;
      else if (d_[j] < -opts_.dual_tol)
        at_upper_[j] = true;
    }
  }

  void compute_primal() {
    std::vector<double> xn(nc_, 0.0);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < nc_; ++j) {
      if (pos_[j] != npos) continue;
      xn[j] = at_upper_[j] ? hi_[j] : lo_[j];
      if (xn[j] != 0.0) nz.push_back(j);
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const double* t = tab_.data() + r * nc_;
      double s = 0.0;
      for (std::size_t j : nz) s += t[j] * xn[j];
      xb_[r] = -s;
    }
  }

  [[nodiscard]] double internal_objective() const {
    double s = 0.0;
    for (std::size_t j = 0; j < nc_; ++j)
      if (cost_[j] != 0.0) s += cost_[j] * value(j);
    return s;
  }

  // Lower bound on the objective over the current box: the objective at the
  // current point plus the worst move of every dual infeasible nonbasic.
  [[nodiscard]] double dual_bound() const {
    double b = internal_objective();
    for (std::size_t j = 0; j < nc_; ++j) {
      if (pos_[j] != npos || lo_[j] == hi_[j]) continue;
      const double range = hi_[j] - lo_[j];
      if (!at_upper_[j] && d_[j] < 0) b += d_[j] * range;
      if (at_upper_[j] && d_[j] > 0) b -= d_[j] * range;
    }
    return b;
  }

  [[nodiscard]] double infeasibility(std::size_t r) const {
    const std::size_t j = basis_[r];
    const double tol = opts_.primal_tol * std::max(1.0, std::max(std::abs(lo_[j]), std::abs(hi_[j])));
    if (xb_[r] < lo_[j] - tol) return lo_[j] - xb_[r];
    if (xb_[r] > hi_[j] + tol) return xb_[r] - hi_[j];
    return 0.0;
  }

  std::size_t choose_leaving(bool bland) const {
    std::size_t best = npos;
    double best_v = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double v = infeasibility(r);
      if (v <= 0.0) continue;
      if (bland) {
        if (best == npos || basis_[r] < basis_[best]) best = r;
      } else if (v > best_v) {
        best_v = v;
        best = r;
      }
    }
    return best;
  }

  // Harris two-pass ratio test over row r.
  std::size_t choose_entering(std::size_t r, bool below, bool bland) {
    const double* t = row_ptr(r);
    auto eligible = [&](std::size_t j, double& alpha) {
      if (pos_[j] != npos || lo_[j] == hi_[j]) return false;
      const double a = t[j];
      if (std::abs(a) < opts_.pivot_tol) return false;
      // below: basic value must rise; x_B = -sum t_j x_j.
      const bool up = !at_upper_[j];
      const bool ok = below ? (up ? a < 0 : a > 0) : (up ? a > 0 : a < 0);
      alpha = std::abs(a);
      return ok;
    };
    // Signed slack: a reduced cost already on the wrong side counts as zero.
    auto slack = [&](std::size_t j) { return std::max(0.0, at_upper_[j] ? -d_[j] : d_[j]); };
    double theta_max = kInf;
    for (std::size_t j = 0; j < nc_; ++j) {
      double a;
      if (!eligible(j, a)) continue;
      theta_max = std::min(theta_max, (slack(j) + opts_.dual_tol) / a);
    }
    if (!std::isfinite(theta_max)) return npos;
    std::size_t best = npos;
    double best_a = 0.0, best_ratio = kInf;
    for (std::size_t j = 0; j < nc_; ++j) {
      double a;
      if (!eligible(j, a)) continue;
      const double ratio = slack(j) / a;
      if (ratio > theta_max) continue;
      if (bland) {
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && j < best)) {
          best_ratio = ratio;
          best = j;
        }
      } else if (a > best_a) {
        best_a = a;
        best = j;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q, double target, bool below) {
    double* pr = row_ptr(r);
    const double piv = pr[q];
    // Primal step: entering q moves so that the leaving basic hits target.
    const double theta = -(target - xb_[r]) / piv;
    const double xq = value(q) + theta;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double a = tab_[i * nc_ + q];
      if (a != 0.0) xb_[i] -= a * theta;
    }
    const std::size_t leaving = basis_[r];

    const double inv = 1.0 / piv;
    nz_.clear();
    for (std::size_t j = 0; j < nc_; ++j) {
      if (pr[j] == 0.0) continue;
      pr[j] *= inv;
      if (std::abs(pr[j]) < 1e-14) {
        pr[j] = 0.0;
        continue;
      }
      nz_.push_back(j);
    }
    pr[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = row_ptr(i);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
    const double dq = d_[q];
    if (dq != 0.0)
      for (std::size_t j : nz_) d_[j] -= dq * pr[j];
    d_[q] = 0.0;

    basis_[r] = q;
    pos_[q] = r;
    pos_[leaving] = npos;
    at_upper_[leaving] = !below;
    xb_[r] = xq;
    // Keep the leaving column's reduced cost on the side matching its bound.
    if (below && d_[leaving] < 0 && d_[leaving] > -opts_.dual_tol) d_[leaving] = 0.0;
    if (!below && d_[leaving] > 0 && d_[leaving] < opts_.dual_tol) d_[leaving] = 0.0;
  }

  // Rebuild B^-1 [A | -I] for the current basis from the original rows.
  void refactor() {
    const std::vector<std::size_t> target = basis_;
    std::vector<bool> want(nc_, false);
    for (std::size_t j : target) want[j] = true;
    tab_.assign(m_ * nc_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (auto [j, a] : rows_[r]) tab_[r * nc_ + j] = -a;
      tab_[r * nc_ + ns_ + r] = 1.0;
    }
    std::vector<std::size_t> new_basis(m_, npos);
    std::vector<bool> row_done(m_, false);
    // Logicals of rows they already own need no elimination.
    for (std::size_t r = 0; r < m_; ++r)
      if (want[ns_ + r]) {
        new_basis[r] = ns_ + r;
        row_done[r] = true;
        want[ns_ + r] = false;
      }
    for (std::size_t j : target) {
      if (!want[j]) continue;
      std::size_t best = npos;
      double best_a = 1e-11;
      for (std::size_t r = 0; r < m_; ++r) {
        if (row_done[r]) continue;
        const double a = std::abs(tab_[r * nc_ + j]);
        if (a > best_a) {
          best_a = a;
          best = r;
        }
      }
      if (best == npos) continue;  // singular: leave the logical in place
      eliminate(best, j);
      new_basis[best] = j;
      row_done[best] = true;
    }
    // Rows never used as pivots still hold their own logical as a unit column.
    for (std::size_t r = 0; r < m_; ++r)
      if (new_basis[r] == npos) new_basis[r] = ns_ + r;
    basis_ = new_basis;
    pos_.assign(nc_, npos);
    for (std::size_t r = 0; r < m_; ++r) pos_[basis_[r]] = r;
    reprice();
    place_nonbasics();
    compute_primal();
    iter_since_refactor_ = 0;
  }

  void reprice() {
    d_ = cost_;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* t = tab_.data() + r * nc_;
      for (std::size_t j = 0; j < nc_; ++j) d_[j] -= cb * t[j];
    }
    for (std::size_t r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
  }

  void set_costs(const std::vector<double>& c) {
    if (cost_ != c) {
      cost_ = c;
      reprice();
    }
    place_nonbasics();
    compute_primal();
  }

  void eliminate(std::size_t r, std::size_t q) {
    double* pr = row_ptr(r);
    const double inv = 1.0 / pr[q];
    nz_.clear();
    for (std::size_t j = 0; j < nc_; ++j) {
      if (pr[j] == 0.0) continue;
      pr[j] *= inv;
      nz_.push_back(j);
    }
    pr[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = row_ptr(i);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
  }

  [[nodiscard]] std::vector<double> structural_values() const {
    std::vector<double> x(model_.num_variables());
    for (VarId v = 0; v < x.size(); ++v)
      x[v] = col_of_var_[v] == npos ? model_.variable(v).lower : value(col_of_var_[v]);
    return x;
  }

  // Largest |a_r x - r_r| over rows, from the original data.
  [[nodiscard]] double residual() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (auto [j, a] : rows_[r]) s += a * value(j);
      worst = std::max(worst, std::abs(s - value(ns_ + r)) / std::max(1.0, std::abs(s)));
    }
    return worst;
  }

  const MilpModel& model_;
  LpOptions opts_;
  double sign_ = 1.0;
  double obj_shift_ = 0.0;
  std::size_t ns_ = 0, m_ = 0, nc_ = 0;
  std::vector<std::size_t> col_of_var_;
  std::vector<VarId> var_of_col_;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows_;
  std::vector<double> row_lo_, row_hi_;
  std::vector<double> cost_, d_, true_cost_, pert_cost_;
  double pert_bound_ = 0.0;
  std::vector<double> lo_, hi_, base_lo_, base_hi_;
  std::vector<double> tab_;
  std::vector<std::size_t> basis_, pos_;
  std::vector<bool> at_upper_;
  std::vector<double> xb_;
  std::vector<std::size_t> nz_;
  long iterations_ = 0, start_iterations_ = 0, iter_since_refactor_ = 0;
  bool bounds_conflict_ = false;
  bool always_infeasible_ = false;  // a row with no free columns is violated
  std::vector<double> implied_lo_, implied_hi_;  // from singleton rows
  bool refactored_at_end_ = false;
};

// One-shot LP relaxation of a model under a bounds overlay.
inline LpResult solve_relaxation(const MilpModel& model, const std::vector<double>& lower,
                                 const std::vector<double>& upper, LpOptions opts = {}) {
  DualSimplex lp(model, opts);
  lp.set_bounds(lower, upper);
  return lp.solve();
}

inline LpResult solve_relaxation(const MilpModel& model, LpOptions opts = {}) {
  DualSimplex lp(model, opts);
  return lp.solve();
}

}  // namespace netgen
