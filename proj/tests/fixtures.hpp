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

// Shared instance builders for the unit and acceptance suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "recrob/model.hpp"
#include "recrob/norm.hpp"
#include "recrob/scalarization.hpp"
#include "recrob/types.hpp"

namespace recrob::fixtures {

// Axis box [lo, hi] in R^n as A y <= b rows.
inline Scenario box_scenario(const std::string& id, const Vector& lo, const Vector& hi,
                             Vector cost = {}) {
  const std::size_t n = lo.size();
  Scenario s{id, Matrix(0, n), {}, cost.empty() ? Vector(n, 0.0) : cost};
  for (std::size_t j = 0; j < n; ++j) {
    Vector row(n, 0.0);
    row[j] = 1.0;
    s.a_matrix.append_row(row);
    s.rhs.push_back(hi[j]);
    row[j] = -1.0;
    s.a_matrix.append_row(row);
    s.rhs.push_back(-lo[j]);
  }
  return s;
}

// G1 = [0,1]^2, G2 = [2,3] x [0,1].
inline UncertainProblem two_boxes() {
  UncertainProblem p;
  p.n = 2;
  p.x_domain = Polyhedron::whole_space(2);
  p.scenarios = {box_scenario("s1", {0, 0}, {1, 1}), box_scenario("s2", {2, 0}, {3, 1})};
  return p;
}

// Two assets over the probability simplex, costs -p so that minimizing the
// cost maximizes the profit.
inline UncertainProblem two_asset_portfolio() {
  UncertainProblem p;
  p.n = 2;
  p.x_domain.d_matrix = Matrix{{1, 1}, {-1, -1}, {-1, 0}, {0, -1}};
  p.x_domain.e_vector = {1, -1, 0, 0};
  p.scenarios = {Scenario{"p1", Matrix(0, 2), {}, {-2, -1}},
                 Scenario{"p2", Matrix(0, 2), {}, {-1, -2}}};
  return p;
}

// Random bounded 2-D scenario polygons with integer data in [-3, 3]. Every
// scenario carries the box |y_j| <= 3, X = R^2. eps is chosen so that every
// G_eps set is nonempty.
struct RandomInstance {
  UncertainProblem problem;
  double eps;
};

inline RandomInstance random_2d_instance(std::uint64_t seed, std::size_t max_scenarios = 4,
                                         std::size_t min_scenarios = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> count(min_scenarios, max_scenarios);
  std::uniform_int_distribution<int> extra(1, 2);
  for (;;) {
    RandomInstance inst;
    auto& p = inst.problem;
    p.n = 2;
    p.x_domain = Polyhedron::whole_space(2);
    const std::size_t big_n = count(rng);
    for (std::size_t k = 0; k < big_n; ++k) {
      Scenario s = box_scenario("s" + std::to_string(k + 1), {-3, -3}, {3, 3},
                                {double(coef(rng)), double(coef(rng))});
      const int rows = extra(rng);
      for (int i = 0; i < rows; ++i) {
        const Vector row{double(coef(rng)), double(coef(rng))};
        s.a_matrix.append_row(row);
        s.rhs.push_back(coef(rng));
      }
      p.scenarios.push_back(std::move(s));
    }
    // eps = max_k f*_k + 1 keeps every G set nonempty and some objective rows active.
    double worst = -HUGE_VAL;
    bool ok = true;
    for (const auto& s : p.scenarios) {
      const auto fs = scenario_optimum(p, s);
      if (!fs) {
        ok = false;
        break;
      }
      worst = std::max(worst, *fs);
    }
    if (!ok) continue;
    inst.eps = std::round(worst) + 1.0;
    return inst;
  }
}

// Right-hand-side uncertainty in R^2: shared A (box plus random rows) and
// cost; each vertex b_k = A y_k + s_k with s_k >= 0 so every F_k is nonempty.
// When `interior` > 0, that many random convex combinations of the vertex
// right-hand sides are appended (ids "mix<i>").
struct RhsInstance {
  UncertainProblem vertices;
  UncertainProblem augmented;
  double eps;
};

inline RhsInstance random_rhs_instance(std::uint64_t seed, std::size_t interior = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> slack(0, 2);
  std::uniform_int_distribution<std::size_t> count(2, 4);
  RhsInstance inst;
  auto& p = inst.vertices;
  p.n = 2;
  p.rhs_only = true;
  p.x_domain = Polyhedron::whole_space(2);
  Matrix a{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const int extra = 1 + slack(rng) % 2;
  for (int i = 0; i < extra; ++i) {
    Vector row{double(coef(rng)), double(coef(rng))};
    if (row[0] == 0 && row[1] == 0) row[0] = 1;
    a.append_row(row);
  }
  Vector cost{double(coef(rng)), double(coef(rng))};
  const std::size_t big_n = count(rng) + 1;
  for (std::size_t k = 0; k < big_n; ++k) {
    const Vector y{double(coef(rng)), double(coef(rng))};
    Vector b = multiply(a, y);
    for (double& v : b) v += slack(rng);
    p.scenarios.push_back({"v" + std::to_string(k + 1), a, b, cost});
  }
  double worst = -HUGE_VAL;
  for (const auto& s : p.scenarios) worst = std::max(worst, *scenario_optimum(p, s));
  inst.eps = worst + 0.5;

  inst.augmented = p;
  std::gamma_distribution<double> g(1.0, 1.0);
  for (std::size_t i = 0; i < interior; ++i) {
    Vector w(big_n);
    double total = 0.0;
    for (double& v : w) total += (v = g(rng));
    Vector b(a.rows(), 0.0);
    for (std::size_t k = 0; k < big_n; ++k)
      for (std::size_t r = 0; r < b.size(); ++r) b[r] += w[k] / total * p.scenarios[k].rhs[r];
    inst.augmented.scenarios.push_back({"mix" + std::to_string(i + 1), a, b, cost});
  }
  return inst;
}

// Adds `count` relaxed copies of random scenarios: right-hand sides loosened
// by nonnegative integers, same cost.
inline UncertainProblem with_relaxed_copies(UncertainProblem p, std::uint64_t seed,
                                            std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> loosen(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, p.num_scenarios() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    Scenario s = p.scenarios[pick(rng)];
    s.id = "relaxed" + std::to_string(i + 1) + "_of_" + s.id;
    for (double& b : s.rhs) b += loosen(rng);
    // rotate the position so relaxed copies are not always last
    p.scenarios.insert(p.scenarios.begin() + static_cast<long>(pick(rng)), s);
  }
  return p;
}

// Example with matrix uncertainty: lines x1 = 0, x2 = 0, x1 + x2 = 2.
inline std::vector<HyperplaneScenario> incircle_lines() {
  return {{{1.0, 0.0}, 0.0, HyperplaneKind::Hyperplane},
          {{0.0, 1.0}, 0.0, HyperplaneKind::Hyperplane},
          {{1.0, 1.0}, 2.0, HyperplaneKind::Hyperplane}};
}

}  // namespace recrob::fixtures
