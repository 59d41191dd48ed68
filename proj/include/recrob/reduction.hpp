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

// Scenario-set reductions that keep the recoverable-robust optimum.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/geometry.hpp"
#include "recrob/linalg.hpp"
#include "recrob/model.hpp"
#include "recrob/scalarization.hpp"
#include "recrob/simplex.hpp"
#include "recrob/types.hpp"

namespace recrob {

struct Reduction {
  UncertainProblem reduced;
  std::vector<std::string> removed;
};

namespace detail {

// max objective^T y over F(s) intersected with X; +inf when unbounded,
// -inf when F(s) is empty.
inline double max_over_feasible(const UncertainProblem& problem, const Scenario& s,
                                std::span<const double> objective) {
  lp::LinearProgram prog;
  for (std::size_t j = 0; j < problem.n; ++j) prog.add_variable(-objective[j], -lp::kInf, lp::kInf);
  for (std::size_t i = 0; i < s.a_matrix.rows(); ++i)
    prog.add_dense_constraint(s.a_matrix.row(i), lp::Sense::Le, s.rhs[i]);
  const auto& X = problem.x_domain;
  for (std::size_t i = 0; i < X.d_matrix.rows(); ++i)
    prog.add_dense_constraint(X.d_matrix.row(i), lp::Sense::Le, X.e_vector[i]);
  const lp::Outcome out = lp::solve(prog);
  if (out.status == lp::Status::Infeasible) return -HUGE_VAL;
  if (out.status == lp::Status::Unbounded) return HUGE_VAL;
  return -out.objective_value;
}

inline UncertainProblem keep_only(const UncertainProblem& problem, const std::vector<bool>& keep) {
  UncertainProblem out = problem;
  out.scenarios.clear();
  for (std::size_t k = 0; k < problem.num_scenarios(); ++k)
    if (keep[k]) out.scenarios.push_back(problem.scenarios[k]);
  return out;
}

}  // namespace detail

/// True when `relaxed` is certified to be a relaxation of `base`:
/// F(base) is contained row by row in F(relaxed) and the relaxed cost is
/// no larger anywhere on F(base). Both imply G_eps(base) within G_eps(relaxed).
inline bool is_relaxation(const UncertainProblem& problem, const Scenario& base,
                          const Scenario& relaxed, double tol = 1e-7) {
  for (std::size_t i = 0; i < relaxed.a_matrix.rows(); ++i)
    if (detail::max_over_feasible(problem, base, relaxed.a_matrix.row(i)) > relaxed.rhs[i] + tol)
      return false;
  return detail::max_over_feasible(problem, base, subtract(relaxed.cost, base.cost)) <= tol;
}

/// Drops scenarios that relax a surviving scenario. Certificates are
/// gathered for all ordered pairs first. The minimal scenarios (nothing
/// strictly tighter, lowest index among equivalent ones) all stay; any
/// other scenario goes when a minimal one certifies it directly. The
/// reduced set may end up with a single scenario.
inline Reduction remove_relaxed_scenarios(const UncertainProblem& problem, double tol = 1e-7) {
  detail::validate_problem(problem, 1);
  const std::size_t N = problem.num_scenarios();
  std::vector<std::vector<char>> cert(N, std::vector<char>(N, 0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) cert[i][j] = is_relaxation(problem, problem.scenarios[i], problem.scenarios[j], tol);

  std::vector<bool> minimal(N, true);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N && minimal[j]; ++i)
      if (i != j && cert[i][j] && (!cert[j][i] || i < j)) minimal[j] = false;

  std::vector<bool> keep(N, true);
  Reduction res;
  for (std::size_t j = 0; j < N; ++j) {
    if (minimal[j]) continue;
    for (std::size_t i = 0; i < N; ++i)
      if (minimal[i] && cert[i][j]) {
        keep[j] = false;
        res.removed.push_back(problem.scenarios[j].id);
        break;
      }
  }
  res.reduced = detail::keep_only(problem, keep);
  return res;
}

/// True when `point` is a convex combination of `vertices` within tol.
inline bool in_convex_hull(const std::vector<Vector>& vertices, std::span<const double> point,
                           double tol = 1e-8) {
  if (vertices.empty()) return false;
  lp::LinearProgram prog;
  for (std::size_t i = 0; i < vertices.size(); ++i) prog.add_variable(0.0);
  std::vector<lp::Term> sum;
  for (std::size_t i = 0; i < vertices.size(); ++i) sum.push_back({i, 1.0});
  prog.add_constraint(sum, lp::Sense::Eq, 1.0);
  for (std::size_t c = 0; c < point.size(); ++c) {
    std::vector<lp::Term> terms;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i][c] != 0.0) terms.push_back({i, vertices[i][c]});
    prog.add_constraint(terms, lp::Sense::Le, point[c] + tol);
    prog.add_constraint(terms, lp::Sense::Ge, point[c] - tol);
  }
  return lp::solve(prog).status == lp::Status::Optimal;
}

/// Right-hand-side uncertainty: a scenario whose b lies in the convex hull
/// of the other surviving b vectors cannot change the optimum and is dropped.
/// Greedy in index order; at least two scenarios remain.
inline Reduction vertex_reduce_rhs(const UncertainProblem& problem, double tol = 1e-8) {
  detail::validate_problem(problem, 1);
  require(problem.rhs_only, Errc::StructureViolation,
          "vertex reduction needs right-hand-side-only uncertainty; with uncertain A or c "
          "the vertex scenarios do not determine the recoverable-robust solutions");
  const std::size_t N = problem.num_scenarios();
  std::vector<bool> keep(N, true);
  std::size_t alive = N;
  Reduction res;
  for (std::size_t j = 0; j < N && alive > 2; ++j) {
    std::vector<Vector> others;
    for (std::size_t i = 0; i < N; ++i)
      if (i != j && keep[i]) others.push_back(problem.scenarios[i].rhs);
    if (in_convex_hull(others, problem.scenarios[j].rhs, tol)) {
      keep[j] = false;
      --alive;
      res.removed.push_back(problem.scenarios[j].id);
    }
  }
  res.reduced = detail::keep_only(problem, keep);
  return res;
}

struct Witness {
  std::vector<std::size_t> indices;
  std::vector<std::string> ids;
  double radius = 0.0;
  std::size_t solves = 0;
};

namespace detail {

// Calls solve(subset) on subsets of `pool` with sizes 2..max_size in
// lexicographic order until one reaches `target`.
inline Witness enumerate_witness(const std::vector<std::size_t>& pool, std::size_t max_size,
                                 double target, std::size_t budget,
                                 const std::function<double(const std::vector<std::size_t>&)>& solve) {
  Witness w;
  std::vector<std::size_t> pick;
  bool found = false;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t size) {
    if (found) return;
    if (pick.size() == size) {
      require(w.solves < budget, Errc::BudgetExhausted,
              "no witness subset found within " + std::to_string(budget) + " solves");
      ++w.solves;
      const double r = solve(pick);
      if (std::abs(r - target) <= 1e-6) {
        w.indices = pick;
        w.radius = r;
        found = true;
      }
      return;
    }
    for (std::size_t i = start; i < pool.size() && !found; ++i) {
      pick.push_back(pool[i]);
      rec(i + 1, size);
      pick.pop_back();
    }
  };
  for (std::size_t size = 2; size <= std::min(max_size, pool.size()) && !found; ++size) rec(0, size);
  require(found, Errc::BudgetExhausted, "no witness subset of size <= " + std::to_string(max_size));
  return w;
}

}  // namespace detail

/// Smallest-size subset (2 <= size <= n + 1) with the same optimal radius
/// as the full set. Subsets are drawn from the scenarios that survive
/// relaxation removal, so a relaxed scenario never appears.
inline Witness caratheodory_witness(const UncertainProblem& problem, ExtReal eps,
                                    const BlockNorm& norm, std::size_t budget = 10000) {
  detail::validate_problem(problem, 1);
  require(problem.x_domain.is_whole_space(), Errc::StructureViolation,
          "witness search assumes X = R^n");
  const double target = solve_rec_eps(problem, eps, norm).radius.value();
  const Reduction red = remove_relaxed_scenarios(problem);
  std::vector<std::size_t> pool;
  for (std::size_t k = 0; k < problem.num_scenarios(); ++k)
    if (std::find(red.removed.begin(), red.removed.end(), problem.scenarios[k].id) ==
        red.removed.end())
      pool.push_back(k);
  Witness w = detail::enumerate_witness(
      pool, problem.n + 1, target, budget, [&](const std::vector<std::size_t>& subset) {
        UncertainProblem sub = problem;
        sub.scenarios.clear();
        for (std::size_t k : subset) sub.scenarios.push_back(problem.scenarios[k]);
        return solve_rec_eps(sub, eps, norm).radius.value();
      });
  for (std::size_t k : w.indices) w.ids.push_back(problem.scenarios[k].id);
  return w;
}

inline Witness caratheodory_witness(const std::vector<HyperplaneScenario>& scenarios,
                                    const BlockNorm& norm, std::size_t budget = 10000) {
  require(!scenarios.empty(), Errc::TooFewScenarios, "no hyperplane scenarios");
  const std::size_t n = scenarios.front().a.size();
  const double target = solve_rec_eps_hyperplanes(scenarios, norm).radius;
  std::vector<std::size_t> pool(scenarios.size());
  for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = k;
  Witness w = detail::enumerate_witness(
      pool, n + 1, target, budget, [&](const std::vector<std::size_t>& subset) {
        std::vector<HyperplaneScenario> sub;
        for (std::size_t k : subset) sub.push_back(scenarios[k]);
        return solve_rec_eps_hyperplanes(sub, norm).radius;
      });
  for (std::size_t k : w.indices) w.ids.push_back("h" + std::to_string(k + 1));
  return w;
}

/// Radius of x over the convex hull of hyperplane vertex scenarios (a_i, b_i),
/// sampled on the barycentric grid with the given number of divisions.
/// Used to check whether a vertex reduction is valid for uncertain normals.
inline double sampled_hull_radius(const std::vector<HyperplaneScenario>& vertices,
                                  std::span<const double> x, const BlockNorm& norm,
                                  std::size_t divisions) {
  require(!vertices.empty(), Errc::TooFewScenarios, "no vertex scenarios");
  require(divisions > 0, Errc::InvalidArgument, "at least one division needed");
  const std::size_t m = vertices.size();
  const std::size_t n = vertices.front().a.size();
  double worst = 0.0;
  std::vector<std::size_t> counts(m, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t left) {
    if (idx + 1 == m) {
      counts[idx] = left;
      Vector a(n, 0.0);
      double b = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double w = double(counts[i]) / double(divisions);
        for (std::size_t j = 0; j < n; ++j) a[j] += w * vertices[i].a[j];
        b += w * vertices[i].b;
      }
      if (norm_inf(a) == 0.0) return;
      worst = std::max(worst, vertices.front().kind == HyperplaneKind::Hyperplane
                                  ? geometry::dist_point_hyperplane(x, a, b, norm)
                                  : geometry::dist_point_halfspace(x, a, b, norm));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[idx] = c;
      rec(idx + 1, left - c);
    }
  };
  rec(0, divisions);
  return worst;
}

}  // namespace recrob
