// Copyright 2026 The recrob Authors
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

#include "recrob/reduction.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace recrob {
namespace {

const double kSqrt2 = std::sqrt(2.0);

UncertainProblem interval_problem(std::vector<double> uppers, Vector cost = {0}) {
  UncertainProblem p;
  p.n = 1;
  p.x_domain = Polyhedron::whole_space(1);
  for (std::size_t k = 0; k < uppers.size(); ++k)
    p.scenarios.push_back({"s" + std::to_string(k + 1), Matrix{{1}, {-1}}, {uppers[k], 0.0}, cost});
  return p;
}

TEST(Relaxation, NestedHalflinesRemoveTheLooserOne) {
  UncertainProblem p;
  p.n = 1;
  p.x_domain = Polyhedron::whole_space(1);
  p.scenarios = {{"tight", Matrix{{1}}, {1}, {-1}}, {"loose", Matrix{{1}}, {2}, {-1}}};
  // Note the looser set also contains better objective values; with equal
  // costs that does not matter for containment of G sets.
  const auto red = remove_relaxed_scenarios(p);
  EXPECT_EQ(red.removed, std::vector<std::string>{"loose"});
  ASSERT_EQ(red.reduced.num_scenarios(), 1u);
  EXPECT_EQ(red.reduced.scenarios[0].id, "tight");
  EXPECT_THROW(validate(red.reduced), Error);
  EXPECT_NEAR(solve_rec_eps(red.reduced, 0.0, BlockNorm::l1()).radius.value(), 0.0, 1e-12);
}

TEST(Relaxation, NestedIntervalsCollapseToTheTightest) {
  // [0,1] within [0,2] within [0,3]; s1 certifies both later ones.
  const auto red = remove_relaxed_scenarios(interval_problem({1, 2, 3}));
  EXPECT_EQ(red.removed, (std::vector<std::string>{"s2", "s3"}));
}

TEST(Relaxation, ChainCollapsesInAnyOrder) {
  // Loosest first, and the middle interval twice.
  const auto red = remove_relaxed_scenarios(interval_problem({3, 2, 1, 2}));
  EXPECT_EQ(red.removed, (std::vector<std::string>{"s1", "s2", "s4"}));
  ASSERT_EQ(red.reduced.num_scenarios(), 1u);
  EXPECT_EQ(red.reduced.scenarios[0].id, "s3");
}

TEST(Relaxation, IdenticalScenariosDropTheSecond) {
  UncertainProblem p = fixtures::two_boxes();
  p.scenarios[1] = p.scenarios[0];
  p.scenarios[1].id = "copy";
  p.scenarios.push_back(fixtures::box_scenario("far", {5, 5}, {6, 6}));
  const auto red = remove_relaxed_scenarios(p);
  EXPECT_EQ(red.removed, std::vector<std::string>{"copy"});
}

TEST(Relaxation, DisjointBoxesStay) {
  EXPECT_TRUE(remove_relaxed_scenarios(fixtures::two_boxes()).removed.empty());
}

TEST(Relaxation, CostDominanceIsRequired) {
  UncertainProblem p = interval_problem({1, 2, 5});
  p.scenarios[1].cost = {1};  // worse objective on F(s1) than s1's cost 0
  const auto red = remove_relaxed_scenarios(p);
  EXPECT_TRUE(std::find(red.removed.begin(), red.removed.end(), "s2") == red.removed.end());
  EXPECT_TRUE(is_relaxation(p, p.scenarios[0], p.scenarios[2]));
  EXPECT_FALSE(is_relaxation(p, p.scenarios[0], p.scenarios[1]));
}

TEST(Relaxation, UnboundedContainmentIsNotAnError) {
  UncertainProblem p;
  p.n = 1;
  p.x_domain = Polyhedron::whole_space(1);
  p.scenarios = {{"open", Matrix{{-1}}, {0}, {0}}, {"closed", Matrix{{1}}, {1}, {0}}};
  EXPECT_FALSE(is_relaxation(p, p.scenarios[0], p.scenarios[1]));
  EXPECT_TRUE(remove_relaxed_scenarios(p).removed.empty());
}

TEST(Relaxation, PreservesOptimalRadius) {
  for (int seed = 0; seed < 5; ++seed) {
    const auto inst = fixtures::random_2d_instance(5000 + seed);
    const UncertainProblem p = fixtures::with_relaxed_copies(inst.problem, seed, 3);
    const auto red = remove_relaxed_scenarios(p);
    EXPECT_GE(red.removed.size(), 1u);
    for (int i = 0; i < 10; ++i) {
      const double eps = inst.eps + 0.5 * i;
      EXPECT_NEAR(solve_rec_eps(red.reduced, eps, BlockNorm::l1()).radius.value(),
                  solve_rec_eps(p, eps, BlockNorm::l1()).radius.value(), 1e-7);
    }
  }
}

UncertainProblem rhs_problem(const std::vector<Vector>& rhs) {
  UncertainProblem p;
  p.n = 2;
  p.rhs_only = true;
  p.x_domain = Polyhedron::whole_space(2);
  const Matrix a{{1, 0}, {0, 1}};
  for (std::size_t k = 0; k < rhs.size(); ++k)
    p.scenarios.push_back({"b" + std::to_string(k + 1), a, rhs[k], {0, 0}});
  return p;
}

TEST(VertexReduction, Examples) {
  UncertainProblem line = interval_problem({1, 2, 3});
  line.rhs_only = true;
  for (auto& s : line.scenarios) s.rhs = {s.rhs[0]};
  for (auto& s : line.scenarios) s.a_matrix = Matrix{{1}};
  EXPECT_EQ(vertex_reduce_rhs(line).removed, std::vector<std::string>{"s2"});

  EXPECT_TRUE(vertex_reduce_rhs(rhs_problem({{0, 0}, {1, 1}})).removed.empty());
  EXPECT_EQ(vertex_reduce_rhs(rhs_problem({{0, 0}, {1, 0}, {0.5, 0.5}, {1, 1}, {0, 1}})).removed,
            std::vector<std::string>{"b3"});
}

TEST(VertexReduction, RefusesMatrixUncertainty) {
  try {
    vertex_reduce_rhs(fixtures::two_boxes());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StructureViolation);
  }
}

TEST(VertexReduction, AugmentedHullKeepsRadius) {
  for (int seed = 0; seed < 5; ++seed) {
    const auto inst = fixtures::random_rhs_instance(600 + seed);
    const auto red = vertex_reduce_rhs(inst.augmented);
    EXPECT_GE(red.removed.size(), 50u);
    for (double d : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double full = solve_rec_eps(inst.augmented, inst.eps + d, BlockNorm::l1()).radius.value();
      EXPECT_NEAR(solve_rec_eps(inst.vertices, inst.eps + d, BlockNorm::l1()).radius.value(), full, 1e-7);
      EXPECT_NEAR(solve_rec_eps(red.reduced, inst.eps + d, BlockNorm::l1()).radius.value(), full, 1e-7);
    }
  }
}

TEST(NegativeControl, IncircleHullRadius) {
  const auto lines = fixtures::incircle_lines();
  const auto sol = solve_rec_eps_hyperplanes(lines, BlockNorm::l2());
  EXPECT_NEAR(sol.radius, 2 - kSqrt2, 1e-9);
  EXPECT_NEAR(sampled_hull_radius(lines, sol.x, BlockNorm::l2(), 140), kSqrt2 * (2 - kSqrt2), 1e-3);
  EXPECT_NEAR(sampled_hull_radius(lines, Vector{0.5, 0.5}, BlockNorm::l2(), 140), 1 / kSqrt2, 1e-3);
}

TEST(Witness, TwoScenariosAreTheirOwnWitness) {
  const auto w = caratheodory_witness(fixtures::two_boxes(), 0.0, BlockNorm::l1());
  EXPECT_EQ(w.ids, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_NEAR(w.radius, 0.5, 1e-9);
}

TEST(Witness, IncircleNeedsAllThreeLines) {
  const auto w = caratheodory_witness(fixtures::incircle_lines(), BlockNorm::l2());
  EXPECT_EQ(w.indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(w.solves, 4u);
}

TEST(Witness, BudgetIsEnforced) {
  try {
    caratheodory_witness(fixtures::incircle_lines(), BlockNorm::l2(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExhausted);
  }
}

TEST(Witness, RelaxedScenariosNeverAppear) {
  for (int seed = 0; seed < 5; ++seed) {
    const auto inst = fixtures::random_2d_instance(7000 + seed);
    const UncertainProblem p = fixtures::with_relaxed_copies(inst.problem, 100 + seed, 2);
    const auto w = caratheodory_witness(p, inst.eps, BlockNorm::l1());
    const auto removed = remove_relaxed_scenarios(p).removed;
    EXPECT_GE(w.ids.size(), 2u);
    EXPECT_LE(w.ids.size(), 3u);
    for (const auto& id : w.ids)
      EXPECT_TRUE(std::find(removed.begin(), removed.end(), id) == removed.end()) << id;
    // Enumeration oracle: the same-size subsets that include a relaxed
    // scenario but match the radius exist only as relabelings.
    EXPECT_NEAR(w.radius, solve_rec_eps(p, inst.eps, BlockNorm::l1()).radius.value(), 1e-6);
  }
}

}  // namespace
}  // namespace recrob
