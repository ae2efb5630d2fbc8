#include <gtest/gtest.h>

#include <random>

#include "netgen/formulation.hpp"
#include "netgen/oracle.hpp"
#include "netgen/solver.hpp"
#include "support.hpp"

using namespace netgen;

namespace {

NetworkSpec unconstrained(int n) {
  NetworkSpec s;
  s.n = n;
  return s;
}

NetworkSpec with_degrees(std::vector<int> d) {
  NetworkSpec s;
  s.n = static_cast<int>(d.size());
  s.constraints.push_back(DegreeSequence{std::move(d)});
  return s;
}

}  // namespace

TEST(EnumerateGraphs, VisitsEveryMaskOnceInOrder) {
  for (int n : {2, 3, 4}) {
    std::uint32_t expect = 0;
    std::set<std::string> seen;
    enumerate_graphs(n, [&](std::uint32_t mask, const Graph& g) {
      EXPECT_EQ(mask, expect++);
      EXPECT_EQ(g.num_edges(), static_cast<std::size_t>(__builtin_popcount(mask)));
      seen.insert(to_edge_list(g));
    });
    EXPECT_EQ(expect, 1u << (n * (n - 1) / 2));
    EXPECT_EQ(seen.size(), expect);
  }
  EXPECT_THROW(enumerate_graphs(7, [](std::uint32_t, const Graph&) {}), Error);
}

TEST(FeasibleGraphs, UnlabeledCounts) {
  EXPECT_EQ(feasible_graphs(unconstrained(3)).feasible_keys.size(), 4u);
  EXPECT_EQ(feasible_graphs(unconstrained(4)).feasible_keys.size(), 11u);
  EXPECT_EQ(feasible_graphs(unconstrained(5)).feasible_keys.size(), 34u);
  EXPECT_EQ(feasible_graphs(unconstrained(4)).labeled_feasible, 64);
}

TEST(FeasibleGraphs, DegreeSequences) {
  const auto k3 = feasible_graphs(with_degrees({2, 2, 2}));
  EXPECT_EQ(k3.labeled_feasible, 1);
  EXPECT_EQ(k3.feasible_keys.size(), 1u);

  // Degrees are pinned per node: 1 and 2 are the inner vertices of the path,
  // leaving 3-1-2-4 and 4-1-2-3. Of the 12 labeled paths only these two match.
  const auto p4 = feasible_graphs(with_degrees({2, 2, 1, 1}));
  EXPECT_EQ(p4.feasible_keys.size(), 1u);
  EXPECT_EQ(p4.labeled_feasible, 2);
  long paths = 0;
  enumerate_graphs(4, [&](std::uint32_t, const Graph& g) {
    auto d = compute_report(g).degrees;
    std::sort(d.rbegin(), d.rend());
    paths += d == std::vector<int>{2, 2, 1, 1};
  });
  EXPECT_EQ(paths, 12);
  EXPECT_EQ(compute_report(p4.witnesses.begin()->second).diameter, 3);

  const auto none = feasible_graphs(with_degrees({3, 3, 1, 1}));
  EXPECT_TRUE(none.feasible_keys.empty());
  EXPECT_EQ(none.labeled_feasible, 0);
  EXPECT_DOUBLE_EQ(*none.min_slack, 2.0);
}

TEST(OptimalValue, Examples) {
  EXPECT_DOUBLE_EQ(optimal_value(with_degrees({2, 2, 2, 2}), ScalarProperty::global_cc, true).value, 0.0);
  EXPECT_DOUBLE_EQ(optimal_value(unconstrained(3), ScalarProperty::avg_cc, true).value, 1.0);
  const auto diam = optimal_value(unconstrained(4), ScalarProperty::diameter, false);
  EXPECT_DOUBLE_EQ(diam.value, 1.0);
  EXPECT_EQ(diam.witness.num_edges(), 6u);
  EXPECT_THROW(optimal_value(with_degrees({3, 3, 1, 1}), ScalarProperty::avg_cc, true), Error);
}

TEST(OracleReport, JsonExport) {
  auto s = with_degrees({2, 2, 2});
  s.objective = {ObjectiveMode::maximize, ScalarProperty::avg_cc};
  const auto j = to_json(oracle_report(s));
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["labeled_feasible_count"], 1);
  EXPECT_EQ(j["feasible_class_count"], 1);
  EXPECT_EQ(j["optimum"]["value"], 1.0);
  EXPECT_EQ(j["spec_digest"].get<std::string>().size(), 16u);
  EXPECT_EQ(spec_digest(s), spec_digest(parse_spec(spec_to_json(s).dump())));
}

// A graph passes the strict check exactly when the formulation would give it
// zero deviation.
TEST(OracleProperties, CheckAgreesWithZeroSlack) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto spec = testing_support::random_spec(4 + trial % 2, rng);
    enumerate_graphs(spec.n, [&](std::uint32_t mask, const Graph& g) {
      if (mask % 7) return;
      const auto s = spec_slack(g, spec);
      const bool pass = check_spec(g, spec).pass;
      EXPECT_EQ(pass, s && *s <= 1e-9) << spec_to_json(spec).dump() << " mask " << mask;
    });
  }
}

TEST(OracleProperties, SolverAgreesOnRandomSpecs) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const auto spec = testing_support::random_spec(4, rng, trial % 2 == 1);
    const auto oracle = feasible_graphs(spec);
    const auto r = solve(build(spec), SolveOptions{});
    if (!oracle.min_slack) {
      EXPECT_EQ(r.status, SolveStatus::infeasible);
      continue;
    }
    ASSERT_EQ(r.status, SolveStatus::optimal) << spec_to_json(spec).dump();
    EXPECT_NEAR(*r.objective, *oracle.min_slack, 1e-6) << spec_to_json(spec).dump();
    EXPECT_EQ(oracle.labeled_feasible > 0, *r.objective <= 1e-6);
  }
}
