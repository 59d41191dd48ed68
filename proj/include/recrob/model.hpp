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

// Evaluation of uncertain linear problems: feasibility, the eps-good sets
// G_eps(k) = {y in X : A_k y <= b_k, c_k^T y <= eps}, and the recovery
// radius max_k d(x, G_eps(k)).

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/geometry.hpp"
#include "recrob/linalg.hpp"
#include "recrob/norm.hpp"
#include "recrob/types.hpp"

namespace recrob {

inline constexpr double kFeasibilityTol = 1e-7;

namespace detail {

// Shape and finiteness checks; `min_scenarios` is 2 for user-facing
// validation and 1 inside solvers, which also run on reduced sets.
inline void validate_problem(const UncertainProblem& problem, std::size_t min_scenarios) {
  const std::size_t n = problem.n;
  require(n > 0, Errc::DimensionMismatch, "problem dimension must be positive");
  require(problem.scenarios.size() >= min_scenarios, Errc::TooFewScenarios,
          "uncertainty set needs at least " + std::to_string(min_scenarios) +
              " scenarios, got " + std::to_string(problem.scenarios.size()));
  const auto& X = problem.x_domain;
  require(X.d_matrix.rows() == X.e_vector.size(), Errc::DimensionMismatch,
          "x_domain: D has " + std::to_string(X.d_matrix.rows()) + " rows but e has " +
              std::to_string(X.e_vector.size()) + " entries");
  require(X.d_matrix.rows() == 0 || X.d_matrix.cols() == n, Errc::DimensionMismatch,
          "x_domain: D column count differs from n");
  require(all_finite(X.d_matrix.data()) && all_finite(X.e_vector), Errc::NonFiniteData,
          "x_domain contains non-finite data");
  for (const auto& s : problem.scenarios) {
    const std::string where = "scenario '" + s.id + "': ";
    require(s.a_matrix.rows() == s.rhs.size(), Errc::DimensionMismatch,
            where + "A row count differs from b length");
    require(s.a_matrix.rows() == 0 || s.a_matrix.cols() == n, Errc::DimensionMismatch,
            where + "A column count differs from n");
    require(s.cost.size() == n, Errc::DimensionMismatch, where + "c length differs from n");
    require(all_finite(s.a_matrix.data()) && all_finite(s.rhs) && all_finite(s.cost),
            Errc::NonFiniteData, where + "non-finite entry");
  }
  if (problem.rhs_only) {
    const auto& first = problem.scenarios.front();
    for (const auto& s : problem.scenarios)
      require(s.a_matrix == first.a_matrix && s.cost == first.cost, Errc::StructureViolation,
              "rhs_only is set but scenario '" + s.id + "' differs in A or c");
  }
}

}  // namespace detail

/// Checks every structural invariant; the uncertainty set needs N >= 2.
inline void validate(const UncertainProblem& problem) { detail::validate_problem(problem, 2); }

inline double eval_objective(std::span<const double> x, const Scenario& s) {
  return dot(s.cost, x);
}

namespace detail {

inline bool rows_hold(const Matrix& m, const Vector& rhs, std::span<const double> x, double tol) {
  if (m.rows() == 0) return true;
  require(m.cols() == x.size(), Errc::DimensionMismatch, "point dimension mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (dot(m.row(i), x) > rhs[i] + tol) return false;
  return true;
}

}  // namespace detail

inline bool is_feasible(std::span<const double> x, const Scenario& s,
                        const UncertainProblem& problem, double tol = kFeasibilityTol) {
  require(tol >= 0.0, Errc::InvalidArgument, "negative tolerance");
  require(x.size() == problem.n, Errc::DimensionMismatch, "point dimension differs from n");
  return detail::rows_hold(s.a_matrix, s.rhs, x, tol) &&
         detail::rows_hold(problem.x_domain.d_matrix, problem.x_domain.e_vector, x, tol);
}

inline bool in_g_eps(std::span<const double> y, const Scenario& s, const UncertainProblem& problem,
                     ExtReal eps, double tol = kFeasibilityTol) {
  if (!is_feasible(y, s, problem, tol)) return false;
  return eps.is_infinite() || eval_objective(y, s) <= eps.value() + tol;
}

/// G_eps of one scenario as an explicit polyhedron (X rows included).
inline Polyhedron g_eps_polyhedron(const Scenario& s, const UncertainProblem& problem,
                                   ExtReal eps) {
  Polyhedron p{Matrix(0, problem.n), {}};
  for (std::size_t i = 0; i < s.a_matrix.rows(); ++i) {
    p.d_matrix.append_row(s.a_matrix.row(i));
    p.e_vector.push_back(s.rhs[i]);
  }
  if (eps.is_finite()) {
    p.d_matrix.append_row(s.cost);
    p.e_vector.push_back(eps.value());
  }
  for (std::size_t i = 0; i < problem.x_domain.d_matrix.rows(); ++i) {
    p.d_matrix.append_row(problem.x_domain.d_matrix.row(i));
    p.e_vector.push_back(problem.x_domain.e_vector[i]);
  }
  return p;
}

struct RadiusResult {
  ExtReal value;
  std::vector<double> distances;  // per scenario; empty when infinite
  std::vector<Vector> recoveries;
};

/// r_eps(x, U) = max_k d(x, G_eps(k)), infinite as soon as one set is empty.
inline RadiusResult radius(std::span<const double> x, const UncertainProblem& problem,
                           ExtReal eps, const BlockNorm& norm) {
  require(x.size() == problem.n, Errc::DimensionMismatch, "point dimension differs from n");
  RadiusResult res;
  double worst = 0.0;
  for (const auto& s : problem.scenarios) {
    const auto pd = geometry::dist_point_polyhedron(x, g_eps_polyhedron(s, problem, eps), norm);
    if (!pd) return {ExtReal::infinity(), {}, {}};
    worst = std::max(worst, pd->distance);
    res.distances.push_back(pd->distance);
    res.recoveries.push_back(pd->nearest);
  }
  res.value = worst;
  return res;
}

/// Ids of the scenarios whose distance is within tol of the radius.
inline std::vector<std::string> worst_case_set(std::span<const double> x,
                                               const UncertainProblem& problem, ExtReal eps,
                                               const BlockNorm& norm, double tol = 1e-6) {
  const RadiusResult r = radius(x, problem, eps, norm);
  require(r.value.is_finite(), Errc::InfiniteRadius, "worst-case set of an infinite radius");
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < problem.scenarios.size(); ++k)
    if (r.distances[k] >= r.value.value() - tol) ids.push_back(problem.scenarios[k].id);
  return ids;
}

}  // namespace recrob
