#include <gtest/gtest.h>

#include <random>

#include "netgen/simplex.hpp"

using namespace netgen;

namespace {

// Exhaustive vertex enumeration: every choice of n tight constraints among
// rows and bounds, solved by Gaussian elimination.
std::optional<double> vertex_optimum(const MilpModel& m, const std::vector<double>& lo,
                                     const std::vector<double>& hi) {
  const std::size_t n = m.num_variables();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& r : m.constraints()) {
    Plane p{std::vector<double>(n, 0.0), r.rhs};
    for (const auto& t : r.terms) p.a[t.var] = t.coef;
    planes.push_back(p);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Plane p{std::vector<double>(n, 0.0), lo[j]};
    p.a[j] = 1;
    planes.push_back(p);
    p.b = hi[j];
    planes.push_back(p);
  }
  std::optional<double> best;
  const bool maximize = m.objective().sense == ObjSense::maximize;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
    if (k == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = planes[pick[i]].a[j];
        a[i][n] = planes[pick[i]].b;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c; i < n; ++i)
          if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
        if (std::abs(a[p][c]) < 1e-9) return;
        std::swap(a[p], a[c]);
        for (std::size_t i = 0; i < n; ++i) {
          if (i == c) continue;
          const double f = a[i][c] / a[c][c];
          for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
      }
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
      for (std::size_t j = 0; j < n; ++j)
        if (x[j] < lo[j] - 1e-7 || x[j] > hi[j] + 1e-7) return;
      if (m.max_violation(x).first > 1e-7) return;
      const double v = m.objective_value(x);
      if (!best || (maximize ? v > *best : v < *best)) best = v;
      return;
    }
    for (std::size_t i = from; i < planes.size(); ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

MilpModel random_lp(std::mt19937& rng, std::size_t n, std::size_t rows) {
  std::uniform_int_distribution<int> coef(-4, 4), rhs(-3, 8), sense(0, 2), bnd(0, 3);
  MilpModel m;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = -bnd(rng);
    m.add_variable("v" + std::to_string(j), VarKind::continuous, lo, lo + 1 + bnd(rng));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({j, static_cast<double>(coef(rng))});
    m.add_linear_constraint("r" + std::to_string(r), t, r % 3 == 2 ? Sense::eq : static_cast<Sense>(sense(rng) % 2 * 2),
                            rhs(rng));
  }
  std::vector<Term> obj;
  for (std::size_t j = 0; j < n; ++j) obj.push_back({j, static_cast<double>(coef(rng))});
  m.set_objective(rng() % 2 ? ObjSense::maximize : ObjSense::minimize, obj);
  return m;
}

}  // namespace

TEST(Simplex, MaximizeSingleBoundedVariable) {
  MilpModel m;
  auto x = m.add_variable("x", VarKind::continuous, 0, 1);
  m.set_objective(ObjSense::maximize, {{x, 1}});
  const auto r = solve_relaxation(m);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_DOUBLE_EQ(r.objective, 1.0);
}

TEST(Simplex, DetectsInfeasibility) {
  MilpModel m;
  auto x = m.add_variable("x", VarKind::continuous, -10, 10);
  m.add_linear_constraint("a", {{x, 1}}, Sense::ge, 2);
  m.add_linear_constraint("b", {{x, 1}}, Sense::le, 1);
  m.set_objective(ObjSense::minimize, {});
  EXPECT_EQ(solve_relaxation(m).status, LpStatus::infeasible);
}

TEST(Simplex, MatchesVertexEnumeration) {
  std::mt19937 rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto m = random_lp(rng, n, 2 + trial % 4);
    std::vector<double> lo, hi;
    for (const auto& v : m.variables()) {
      lo.push_back(v.lower);
      hi.push_back(v.upper);
    }
    const auto expect = vertex_optimum(m, lo, hi);
    const auto got = solve_relaxation(m);
    if (!expect) {
      EXPECT_EQ(got.status, LpStatus::infeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(got.status, LpStatus::optimal) << "trial " << trial;
    EXPECT_NEAR(got.objective, *expect, 1e-7) << "trial " << trial;
    EXPECT_LE(m.max_violation(got.x).first, 1e-7);
  }
  EXPECT_GT(feasible, 50);
}

TEST(Simplex, WarmStartAcrossBoundChanges) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_lp(rng, 3, 4);
    DualSimplex lp(m);
    for (int step = 0; step < 8; ++step) {
      std::vector<double> lo, hi;
      for (const auto& v : m.variables()) {
        std::uniform_real_distribution<double> u(v.lower, v.upper);
        double a = std::round(u(rng)), b = std::round(u(rng));
        if (a > b) std::swap(a, b);
        lo.push_back(step % 2 ? v.lower : a);
        hi.push_back(step % 2 ? v.upper : b);
      }
      lp.set_bounds(lo, hi);
      const auto got = lp.solve();
      const auto expect = vertex_optimum(m, lo, hi);
      if (!expect) {
        EXPECT_EQ(got.status, LpStatus::infeasible);
      } else {
        ASSERT_EQ(got.status, LpStatus::optimal);
        EXPECT_NEAR(got.objective, *expect, 1e-7);
      }
    }
  }
}

TEST(Simplex, CutoffStopsEarly) {
  MilpModel m;
  auto x = m.add_variable("x", VarKind::continuous, 0, 5);
  auto y = m.add_variable("y", VarKind::continuous, 0, 5);
  m.add_linear_constraint("c", {{x, 1}, {y, 1}}, Sense::ge, 4);
  m.set_objective(ObjSense::minimize, {{x, 1}, {y, 2}});
  DualSimplex lp(m);
  EXPECT_EQ(lp.solve(1.0).status, LpStatus::cutoff);
  DualSimplex lp2(m);
  const auto r = lp2.solve();
  EXPECT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
}

TEST(Simplex, FixedColumnsAreFoldedIn) {
  MilpModel m;
  auto x = m.add_variable("x", VarKind::continuous, 2, 2);
  auto y = m.add_variable("y", VarKind::continuous, 0, 10);
  m.add_linear_constraint("c", {{x, 1}, {y, 1}}, Sense::ge, 5);
  m.set_objective(ObjSense::minimize, {{x, 3}, {y, 1}});
  const auto r = solve_relaxation(m);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.objective, 9.0, 1e-9);
  EXPECT_NEAR(r.x[y], 3.0, 1e-9);
}

TEST(Simplex, WarmStartAcrossObjectiveChanges) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 80; ++trial) {
    auto m = random_lp(rng, 3, 3 + trial % 3);
    DualSimplex lp(m);
    for (int step = 0; step < 6; ++step) {
      std::vector<Term> obj;
      for (std::size_t j = 0; j < 3; ++j) obj.push_back({j, static_cast<double>(coef(rng))});
      const auto sense = step % 2 ? ObjSense::maximize : ObjSense::minimize;
      lp.set_objective(sense, obj, 1.5);
      m.set_objective(sense, obj);
      const auto got = lp.solve();
      std::vector<double> lo, hi;
      for (const auto& v : m.variables()) {
        lo.push_back(v.lower);
        hi.push_back(v.upper);
      }
      const auto expect = vertex_optimum(m, lo, hi);
      if (!expect) {
        EXPECT_EQ(got.status, LpStatus::infeasible);
        break;
      }
      ASSERT_EQ(got.status, LpStatus::optimal) << "trial " << trial << " step " << step;
      EXPECT_NEAR(got.objective, *expect + 1.5, 1e-7) << "trial " << trial << " step " << step;
    }
  }
}
