// Copyright 2026 The dcpm Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <random>

#include "dcpm/milp.hpp"
#include "oracles.hpp"

namespace dcpm::milp {
namespace {

TEST(SolveBip, Knapsack) {
  ZeroOneProgram p(4);
  p.set_objective({-10, -13, -7, -8});
  p.add_constraint({5, 7, 4, 3}, Relation::kLessEqual, 10, "weight");
  const auto sol = solve_bip(p);
  ASSERT_EQ(sol.status, BipStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.value, -21.0);  // items 1 and 3 (13 + 8)
  EXPECT_TRUE(is_feasible_binary(p, sol.point));
  EXPECT_DOUBLE_EQ(sol.proof_gap, 0.0);
}

TEST(SolveBip, IntegralityGapIsClosed) {
  // LP optimum 1.5 at (0.5, 0.5, 0.5); binary optimum 2.
  ZeroOneProgram p(3);
  p.set_objective({1, 1, 1});
  p.add_constraint({1, 1, 0}, Relation::kGreaterEqual, 1);
  p.add_constraint({0, 1, 1}, Relation::kGreaterEqual, 1);
  p.add_constraint({1, 0, 1}, Relation::kGreaterEqual, 1);
  EXPECT_NEAR(solve_lp(p).value, 1.5, 1e-9);
  const auto sol = solve_bip(p);
  ASSERT_EQ(sol.status, BipStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.value, 2.0);
}

TEST(SolveBip, InfeasibleWhenNoBinaryPointFits) {
  // 2·x0 = 1 has the LP point 0.5 but no binary solution.
  ZeroOneProgram p(1);
  p.add_constraint({2}, Relation::kEqual, 1);
  EXPECT_EQ(solve_lp(p).status, LpStatus::kOptimal);
  EXPECT_EQ(solve_bip(p).status, BipStatus::kInfeasible);
}

TEST(SolveBip, NodeLimitReportsTimeoutWithBound) {
  std::mt19937_64 gen(77);
  ZeroOneProgram p(14);
  std::vector<double> c(14);
  std::vector<double> w(14);
  for (int k = 0; k < 14; ++k) {
    c[static_cast<std::size_t>(k)] = -std::uniform_int_distribution<int>(5, 30)(gen);
    w[static_cast<std::size_t>(k)] = std::uniform_int_distribution<int>(3, 17)(gen);
  }
  p.set_objective(c);
  p.add_constraint(w, Relation::kLessEqual, 41);
  const auto full = solve_bip(p);
  ASSERT_EQ(full.status, BipStatus::kOptimal);
  ASSERT_GT(full.nodes_explored, 3);
  const auto cut = solve_bip(p, {3, 60.0});
  EXPECT_EQ(cut.status, BipStatus::kTimeout);
  EXPECT_EQ(cut.nodes_explored, 3);
  EXPECT_LE(cut.best_bound, full.value + 1e-9);
  if (!cut.point.empty()) {
    EXPECT_GE(cut.value, full.value);
    EXPECT_NEAR(cut.proof_gap, cut.value - cut.best_bound, 1e-9);
  }
}

TEST(SolveBip, DeterministicNodeCount) {
  std::mt19937_64 gen(9);
  const auto p = oracle::random_program(gen, 12, 12, 6);
  const auto a = solve_bip(p);
  const auto b = solve_bip(p);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.point, b.point);
}

TEST(SolveBip, MatchesExhaustiveEnumeration) {
  std::mt19937_64 gen(424242);
  for (int trial = 0; trial < 150; ++trial) {
    const auto p = oracle::random_program(gen, 1, 12, 6);
    const auto want = oracle::bip_by_enumeration(p);
    const auto got = solve_bip(p);
    if (!want) {
      EXPECT_EQ(got.status, BipStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(got.status, BipStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(got.value, *want, 1e-9) << "trial " << trial;
    EXPECT_TRUE(is_feasible_binary(p, got.point)) << "trial " << trial;
  }
}

TEST(FeasibilityCheck, UsesRelativeSlack) {
  ZeroOneProgram p(2);
  p.add_constraint({0.1, 0.2}, Relation::kGreaterEqual, 0.3);
  const std::vector<int> both = {1, 1};
  const std::vector<int> one = {0, 1};
  EXPECT_TRUE(is_feasible_binary(p, both));
  EXPECT_FALSE(is_feasible_binary(p, one));
}

}  // namespace
}  // namespace dcpm::milp
