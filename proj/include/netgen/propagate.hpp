#pragma once

// Activity-based bound propagation over the rows of a model. Used at every
// branch-and-bound node before the LP: proves some nodes infeasible outright
// and fixes binaries implied by the branching decisions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "netgen/milp.hpp"

namespace netgen {

class BoundPropagator {
 public:
  explicit BoundPropagator(const MilpModel& model) : model_(model) {
    const auto& rows = model.constraints();
    cols_.resize(model.num_variables());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& t : rows[r].terms) cols_[t.var].push_back(r);
    for (const auto& v : model.variables()) binary_.push_back(v.kind == VarKind::binary);
  }

  // Tightens lo/hi in place, starting from the rows that touch `changed`
  // (all rows when empty). Binaries are fixed exactly; continuous bounds are
  // tightened with a small safety margin. Returns false when some row cannot
  // be satisfied within the bounds.
  bool run(std::vector<double>& lo, std::vector<double>& hi, const std::vector<VarId>& changed = {}) {
    const auto& rows = model_.constraints();
    std::vector<char> queued(rows.size(), 0);
    std::vector<std::size_t> queue;
    if (changed.empty()) {
      for (std::size_t r = 0; r < rows.size(); ++r) queue.push_back(r);
      std::fill(queued.begin(), queued.end(), 1);
    } else {
      for (VarId v : changed)
        for (std::size_t r : cols_[v])
          if (!queued[r]) {
            queued[r] = 1;
            queue.push_back(r);
          }
    }
    std::size_t budget = work_limit_;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t r = queue[head];
      queued[r] = 0;
      const auto& row = rows[r];
      if (budget < row.terms.size()) break;
      budget -= row.terms.size();

      double min_act = 0.0, max_act = 0.0;
      int min_inf = 0, max_inf = 0;
      for (const auto& t : row.terms) {
        const double a = t.coef, l = lo[t.var], u = hi[t.var];
        const double lo_part = a > 0 ? a * l : a * u;
        const double hi_part = a > 0 ? a * u : a * l;
        if (std::isinf(lo_part)) ++min_inf; else min_act += lo_part;
        if (std::isinf(hi_part)) ++max_inf; else max_act += hi_part;
      }
      const double row_hi = row.sense == Sense::ge ? kInf : row.rhs;
      const double row_lo = row.sense == Sense::le ? -kInf : row.rhs;
      const double tol = 1e-6 * std::max(1.0, std::abs(row.rhs));
      if (min_inf == 0 && min_act > row_hi + tol) return false;
      if (max_inf == 0 && max_act < row_lo - tol) return false;

      for (const auto& t : row.terms) {
        const double a = t.coef;
        const VarId v = t.var;
        double new_lo = lo[v], new_hi = hi[v];
        // a x_v <= row_hi - (min activity of the others)
        if (std::isfinite(row_hi)) {
          const double own = a > 0 ? a * lo[v] : a * hi[v];
          const bool own_inf = std::isinf(own);
          if (min_inf == 0 || (min_inf == 1 && own_inf)) {
            const double rest = own_inf ? min_act : min_act - own;
            const double cap = (row_hi - rest) / a;
            if (a > 0)
              new_hi = std::min(new_hi, cap);
            else
              new_lo = std::max(new_lo, cap);
          }
        }
        if (std::isfinite(row_lo)) {
          const double own = a > 0 ? a * hi[v] : a * lo[v];
          const bool own_inf = std::isinf(own);
          if (max_inf == 0 || (max_inf == 1 && own_inf)) {
            const double rest = own_inf ? max_act : max_act - own;
            const double cap = (row_lo - rest) / a;
            if (a > 0)
              new_lo = std::max(new_lo, cap);
            else
              new_hi = std::min(new_hi, cap);
          }
        }
        bool moved = false;
        if (binary_[v]) {
          if (new_hi < 1.0 - 1e-6 && hi[v] > 0.0) {
            hi[v] = 0.0;
            moved = true;
          }
          if (new_lo > 1e-6 && lo[v] < 1.0) {
            lo[v] = 1.0;
            moved = true;
          }
        } else {
          const double scale = std::max(1.0, hi[v] - lo[v]);
          if (new_hi < hi[v] - 1e-3 * scale) {
            hi[v] = new_hi + 1e-7 * std::max(1.0, std::abs(new_hi));
            moved = true;
          }
          if (new_lo > lo[v] + 1e-3 * scale) {
            lo[v] = new_lo - 1e-7 * std::max(1.0, std::abs(new_lo));
            moved = true;
          }
        }
        if (!moved) continue;
        if (lo[v] > hi[v] + 1e-6 * std::max(1.0, std::abs(hi[v]))) return false;
        if (lo[v] > hi[v]) lo[v] = hi[v];
        for (std::size_t r2 : cols_[v])
          if (r2 != r && !queued[r2]) {
            queued[r2] = 1;
            queue.push_back(r2);
          }
      }
    }
    return true;
  }

  void set_work_limit(std::size_t terms) { work_limit_ = terms; }

 private:
  const MilpModel& model_;
  std::vector<std::vector<std::size_t>> cols_;
  std::vector<bool> binary_;
  std::size_t work_limit_ = 2'000'000;
};

}  // namespace netgen
