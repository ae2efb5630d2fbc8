#include <gtest/gtest.h>

#include "netgen/milp.hpp"

using namespace netgen;

TEST(MilpModel, AddVariableAssignsSequentialIds) {
  MilpModel m;
  EXPECT_EQ(m.add_variable("x_1_2", VarKind::binary, 0, 1, 10), 0u);
  EXPECT_EQ(m.add_variable("w_1_2", VarKind::continuous, 1, 9, 0), 1u);
  EXPECT_EQ(m.variable(1).upper, 9.0);
  EXPECT_EQ(m.variable(0).branch_priority, 10);
}

TEST(MilpModel, RejectsDuplicateNamesAndBadBounds) {
  MilpModel m;
  m.add_variable("x_1_2", VarKind::binary, 0, 1);
  EXPECT_THROW(m.add_variable("x_1_2", VarKind::binary, 0, 1), Error);
  EXPECT_THROW(m.add_variable("y", VarKind::continuous, 2, 1), Error);
  EXPECT_THROW(m.add_variable("b", VarKind::binary, 0, 2), Error);
}

TEST(MilpModel, MergesDuplicateTerms) {
  MilpModel m;
  auto v = m.add_variable("v", VarKind::continuous, 0, 10);
  auto u = m.add_variable("u", VarKind::continuous, 0, 10);
  m.add_linear_constraint("r", {{v, 1}, {u, 1}, {v, 2}, {u, -1}}, Sense::le, 4);
  ASSERT_EQ(m.constraints()[0].terms.size(), 1u);
  EXPECT_EQ(m.constraints()[0].terms[0], (Term{v, 3}));
}

TEST(MilpModel, RejectsUnknownIds) {
  MilpModel m;
  m.add_variable("v", VarKind::continuous, 0, 1);
  EXPECT_THROW(m.add_linear_constraint("r", {{5, 1}}, Sense::le, 0), Error);
  EXPECT_THROW(m.set_objective(ObjSense::minimize, {{3, 1}}), Error);
}

TEST(MilpModel, DegreeRowOnThreeNodes) {
  MilpModel m;
  auto x12 = m.add_variable("x_1_2", VarKind::binary, 0, 1);
  auto x13 = m.add_variable("x_1_3", VarKind::binary, 0, 1);
  m.add_linear_constraint("deg_1", {{x12, 1}, {x13, 1}}, Sense::eq, 2);
  EXPECT_EQ(m.max_violation({1, 1}).first, 0.0);
  auto [viol, who] = m.max_violation({1, 0});
  EXPECT_EQ(viol, 1.0);
  EXPECT_EQ(who, "deg_1");
}

TEST(LpFormat, ContainsSectionsAndIsDeterministic) {
  auto make = [] {
    MilpModel m;
    auto x = m.add_variable("x", VarKind::binary, 0, 1);
    m.add_variable("w", VarKind::continuous, 1, 9);
    m.set_objective(ObjSense::minimize, {{x, 1}});
    m.add_linear_constraint("c1", {{x, 0.5}}, Sense::le, 1.0 / 3.0);
    return m;
  };
  const auto a = write_lp_format(make());
  const auto b = write_lp_format(make());
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("Minimize"), std::string::npos);
  EXPECT_NE(a.find("Subject To"), std::string::npos);
  EXPECT_NE(a.find("Binaries"), std::string::npos);
  EXPECT_NE(a.find("1 <= w <= 9"), std::string::npos);
  EXPECT_NE(a.find("0.333333333333"), std::string::npos);
  EXPECT_EQ(a.find("0.3333333333333"), std::string::npos);
}

TEST(LpFormat, EmptyObjectiveIsConstantZero) {
  MilpModel m;
  m.add_variable("x", VarKind::binary, 0, 1);
  m.set_objective(ObjSense::minimize, {});
  const auto text = write_lp_format(m);
  EXPECT_NE(text.find("obj: 0"), std::string::npos);
}

TEST(SolutionText, RoundTrip) {
  MilpModel m;
  m.add_variable("x_1_2", VarKind::binary, 0, 1);
  m.add_variable("pacc", VarKind::continuous, 0, 1);
  const auto text = format_solution_text(m, {1, 0.25});
  auto parsed = parse_solution_text("# header\n" + text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].first, "x_1_2");
  EXPECT_DOUBLE_EQ(parsed[1].second, 0.25);
  EXPECT_THROW(parse_solution_text("x_1_2\n"), Error);
}
