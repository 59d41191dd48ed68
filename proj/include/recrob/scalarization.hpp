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

// Scalarized recoverable-robust counterparts as linear programs.
//
// Variables of the assembled LP: r, x (n), then y^k (n) per scenario,
// followed by whatever the distance model appends (beta weights for the
// primal block-norm form). Every y^k and x is constrained to X.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/geometry.hpp"
#include "recrob/linalg.hpp"
#include "recrob/model.hpp"
#include "recrob/norm.hpp"
#include "recrob/simplex.hpp"
#include "recrob/types.hpp"

namespace recrob {

using geometry::Formulation;

enum class HyperplaneKind { Hyperplane, Halfspace };

/// G = {y : a^T y = b} or {y : a^T y <= b}.
struct HyperplaneScenario {
  Vector a;
  double b = 0.0;
  HyperplaneKind kind = HyperplaneKind::Hyperplane;

  friend bool operator==(const HyperplaneScenario&, const HyperplaneScenario&) = default;
};

struct HyperplaneSolution {
  Vector x;
  double radius = 0.0;
};

enum class LexOrder { RadiusFirst, ObjectiveFirst };

/// Slack added when a first-stage optimum is fixed in a second stage.
inline constexpr double kLexSlack = 1e-7;

/// min c^T y over F(scenario) intersected with X. nullopt when infeasible.
inline std::optional<double> scenario_optimum(const UncertainProblem& problem, const Scenario& s) {
  lp::LinearProgram prog;
  for (std::size_t j = 0; j < problem.n; ++j) prog.add_variable(s.cost[j], -lp::kInf, lp::kInf);
  for (std::size_t i = 0; i < s.a_matrix.rows(); ++i)
    prog.add_dense_constraint(s.a_matrix.row(i), lp::Sense::Le, s.rhs[i]);
  const auto& X = problem.x_domain;
  for (std::size_t i = 0; i < X.d_matrix.rows(); ++i)
    prog.add_dense_constraint(X.d_matrix.row(i), lp::Sense::Le, X.e_vector[i]);
  const lp::Outcome out = lp::solve(prog);
  if (out.status == lp::Status::Infeasible) return std::nullopt;
  require(out.status == lp::Status::Optimal, Errc::UnboundedScenario,
          "scenario '" + s.id + "' has an unbounded objective");
  return out.objective_value;
}

namespace detail {

enum class Goal { MinRadius, MinObjective };

struct RecLayout {
  std::size_t r = 0;
  std::size_t z = 0;  // only for MinObjective
  std::vector<std::size_t> x;
  std::vector<std::vector<std::size_t>> y;
};

inline void add_domain_rows(lp::LinearProgram& prog, const Polyhedron& X,
                            std::span<const std::size_t> vars) {
  for (std::size_t i = 0; i < X.d_matrix.rows(); ++i)
    prog.add_dense_constraint(X.d_matrix.row(i), lp::Sense::Le, X.e_vector[i], vars[0]);
}

// goal MinRadius: min r with per-scenario objective bounds.
// goal MinObjective: min z with c_k^T y^k <= z and r <= delta.
inline RecLayout build_rec_lp(lp::LinearProgram& prog, const UncertainProblem& problem,
                              const std::vector<ExtReal>& bounds, const BlockNorm& norm,
                              Formulation form, Goal goal, double delta) {
  const std::size_t n = problem.n;
  const std::size_t N = problem.num_scenarios();
  const geometry::DistanceModel model = geometry::resolve_distance_model(norm, n, form);
  RecLayout lay;
  if (goal == Goal::MinRadius) {
    lay.r = prog.add_variable(1.0, 0.0, lp::kInf);
  } else {
    lay.r = prog.add_variable(0.0, 0.0, delta);
  }
  for (std::size_t j = 0; j < n; ++j) lay.x.push_back(prog.add_variable(0.0, -lp::kInf, lp::kInf));
  lay.y.resize(N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j < n; ++j)
      lay.y[k].push_back(prog.add_variable(0.0, -lp::kInf, lp::kInf));
  if (goal == Goal::MinObjective) lay.z = prog.add_variable(1.0, -lp::kInf, lp::kInf);

  add_domain_rows(prog, problem.x_domain, lay.x);
  for (std::size_t k = 0; k < N; ++k) {
    const Scenario& s = problem.scenarios[k];
    for (std::size_t i = 0; i < s.a_matrix.rows(); ++i)
      prog.add_dense_constraint(s.a_matrix.row(i), lp::Sense::Le, s.rhs[i], lay.y[k][0]);
    if (goal == Goal::MinRadius) {
      if (bounds[k].is_finite())
        prog.add_dense_constraint(s.cost, lp::Sense::Le, bounds[k].value(), lay.y[k][0]);
    } else {
      std::vector<lp::Term> terms{{lay.z, -1.0}};
      for (std::size_t j = 0; j < n; ++j)
        if (s.cost[j] != 0.0) terms.push_back({lay.y[k][j], s.cost[j]});
      prog.add_constraint(std::move(terms), lp::Sense::Le, 0.0);
    }
    add_domain_rows(prog, problem.x_domain, lay.y[k]);
    geometry::add_distance_rows(prog, model, lay.x, {}, lay.y[k], lay.r);
  }
  return lay;
}

inline RecoverableSolution extract(const UncertainProblem& problem, const RecLayout& lay,
                                   const lp::Outcome& out) {
  RecoverableSolution sol;
  for (std::size_t j : lay.x) sol.x.push_back(out.point[j]);
  double z = -HUGE_VAL;
  for (std::size_t k = 0; k < lay.y.size(); ++k) {
    Vector y;
    for (std::size_t j : lay.y[k]) y.push_back(out.point[j]);
    z = std::max(z, eval_objective(y, problem.scenarios[k]));
    sol.recoveries.push_back(std::move(y));
  }
  sol.worst_objective = z;
  sol.radius = std::max(out.point[lay.r], 0.0);
  return sol;
}

// Names the first scenario whose G set is empty, for diagnostics.
inline std::string first_empty_scenario(const UncertainProblem& problem,
                                        const std::vector<ExtReal>& bounds) {
  for (std::size_t k = 0; k < problem.num_scenarios(); ++k) {
    const Scenario& s = problem.scenarios[k];
    const auto fs = scenario_optimum(problem, s);
    if (!fs || (bounds[k].is_finite() && *fs > bounds[k].value() + kFeasibilityTol))
      return s.id;
  }
  return "?";
}

}  // namespace detail

/// Rec(eps) with one objective bound per scenario (infinite drops the row).
inline RecoverableSolution solve_rec_eps_bounds(const UncertainProblem& problem,
                                                const std::vector<ExtReal>& bounds,
                                                const BlockNorm& norm,
                                                Formulation form = Formulation::Auto) {
  detail::validate_problem(problem, 1);
  require(bounds.size() == problem.num_scenarios(), Errc::DimensionMismatch,
          "one objective bound per scenario expected");
  lp::LinearProgram prog;
  const auto lay = detail::build_rec_lp(prog, problem, bounds, norm, form,
                                        detail::Goal::MinRadius, 0.0);
  const lp::Outcome out = lp::solve(prog);
  if (out.status == lp::Status::Infeasible)
    throw Error(Errc::InfeasibleEps, "G_eps of scenario '" +
                                         detail::first_empty_scenario(problem, bounds) +
                                         "' is empty; the recovery radius is infinite");
  require(out.status == lp::Status::Optimal, Errc::NumericalBreakdown,
          "radius minimization reported unbounded");
  return detail::extract(problem, lay, out);
}

/// Rec(eps): minimize the recovery radius subject to c_k^T y^k <= eps.
/// An infinite eps drops the objective rows (pure feasibility recovery).
inline RecoverableSolution solve_rec_eps(const UncertainProblem& problem, ExtReal eps,
                                         const BlockNorm& norm,
                                         Formulation form = Formulation::Auto) {
  return solve_rec_eps_bounds(
      problem, std::vector<ExtReal>(problem.num_scenarios(), eps), norm, form);
}

/// Rec(delta): minimize max_k c_k^T y^k subject to d(x, y^k) <= delta. The
/// reported radius is recomputed from nearest points at the attained level.
inline RecoverableSolution solve_rec_delta(const UncertainProblem& problem, double delta,
                                           const BlockNorm& norm,
                                           Formulation form = Formulation::Auto) {
  detail::validate_problem(problem, 1);
  require(delta >= 0.0 && std::isfinite(delta), Errc::InvalidArgument,
          "delta must be finite and nonnegative");
  lp::LinearProgram prog;
  const auto lay = detail::build_rec_lp(prog, problem, {}, norm, form,
                                        detail::Goal::MinObjective, delta);
  const lp::Outcome out = lp::solve(prog);
  require(out.status != lp::Status::Infeasible, Errc::InfeasibleDelta,
          "no first-stage point reaches every scenario within delta");
  require(out.status == lp::Status::Optimal, Errc::UnboundedObjective,
          "worst-case objective is unbounded below within delta");
  RecoverableSolution sol = detail::extract(problem, lay, out);

  const RadiusResult r = radius(sol.x, problem, sol.worst_objective, norm);
  if (r.value.is_finite()) {
    sol.radius = r.value;
    sol.recoveries = r.recoveries;
    double z = -HUGE_VAL;
    for (std::size_t k = 0; k < sol.recoveries.size(); ++k)
      z = std::max(z, eval_objective(sol.recoveries[k], problem.scenarios[k]));
    sol.worst_objective = z;
  } else {
    double worst = 0.0;
    for (const auto& y : sol.recoveries) worst = std::max(worst, geometry::distance(norm, sol.x, y));
    sol.radius = worst;
  }
  return sol;
}

/// Center problem for hyperplane / halfspace scenarios with X = R^n:
/// min r s.t. d(x, G_k) <= r, using d(x, H) = |a^T x - b| / ||a||°.
inline HyperplaneSolution solve_rec_eps_hyperplanes(const std::vector<HyperplaneScenario>& scenarios,
                                                    const BlockNorm& norm) {
  require(!scenarios.empty(), Errc::TooFewScenarios, "no hyperplane scenarios");
  const std::size_t n = scenarios.front().a.size();
  lp::LinearProgram prog;
  const std::size_t r = prog.add_variable(1.0, 0.0, lp::kInf);
  std::vector<std::size_t> x;
  for (std::size_t j = 0; j < n; ++j) x.push_back(prog.add_variable(0.0, -lp::kInf, lp::kInf));
  for (const auto& h : scenarios) {
    require(h.a.size() == n, Errc::DimensionMismatch, "hyperplane normals of differing dimension");
    require(all_finite(h.a) && std::isfinite(h.b), Errc::NonFiniteData, "non-finite hyperplane");
    require(norm_inf(h.a) > 0.0, Errc::ZeroNormal, "hyperplane normal is zero");
    Vector neg = h.a;
    for (double& v : neg) v = -v;
    // Moving along +a reaches the set from below, along -a from above.
    const double up = geometry::dual_norm_value(norm, h.a);
    const double down = geometry::dual_norm_value(norm, neg);
    std::vector<lp::Term> above{{r, -1.0}};
    for (std::size_t j = 0; j < n; ++j)
      if (h.a[j] != 0.0) above.push_back({x[j], h.a[j] / down});
    prog.add_constraint(std::move(above), lp::Sense::Le, h.b / down);
    if (h.kind == HyperplaneKind::Hyperplane) {
      std::vector<lp::Term> below{{r, -1.0}};
      for (std::size_t j = 0; j < n; ++j)
        if (h.a[j] != 0.0) below.push_back({x[j], -h.a[j] / up});
      prog.add_constraint(std::move(below), lp::Sense::Le, -h.b / up);
    }
  }
  const lp::Outcome out = lp::solve(prog);
  require(out.status == lp::Status::Optimal, Errc::NumericalBreakdown,
          std::string("hyperplane center LP ended ") + lp::status_name(out.status));
  HyperplaneSolution sol;
  sol.radius = std::max(out.point[r], 0.0);
  for (std::size_t j : x) sol.x.push_back(out.point[j]);
  return sol;
}

/// Regret variant: c_k^T y^k - f*_k <= eps. eps = 0 is recovery-to-optimality.
inline RecoverableSolution solve_rec_regret_eps(const UncertainProblem& problem, ExtReal eps,
                                                const BlockNorm& norm,
                                                Formulation form = Formulation::Auto) {
  detail::validate_problem(problem, 1);
  std::vector<ExtReal> bounds;
  for (const auto& s : problem.scenarios) {
    const auto fs = scenario_optimum(problem, s);
    require(fs.has_value(), Errc::InfeasibleEps, "scenario '" + s.id + "' is infeasible");
    bounds.push_back(eps.is_infinite() ? ExtReal::infinity() : ExtReal(*fs + eps.value()));
  }
  return solve_rec_eps_bounds(problem, bounds, norm, form);
}

/// Lexicographic endpoints of the (objective, radius) front.
/// RadiusFirst: min r, then min z with r held within kLexSlack.
/// ObjectiveFirst: z* = max_k f*_k, then min r with every c_k^T y^k <= z* + kLexSlack.
inline RecoverableSolution lexicographic(const UncertainProblem& problem, const BlockNorm& norm,
                                         LexOrder order, Formulation form = Formulation::Auto) {
  detail::validate_problem(problem, 1);
  if (order == LexOrder::RadiusFirst) {
    const RecoverableSolution first = solve_rec_eps(problem, ExtReal::infinity(), norm, form);
    return solve_rec_delta(problem, first.radius.value() + kLexSlack, norm, form);
  }
  double best = -HUGE_VAL;
  for (const auto& s : problem.scenarios) {
    const auto fs = scenario_optimum(problem, s);
    require(fs.has_value(), Errc::InfeasibleEps, "scenario '" + s.id + "' is infeasible");
    best = std::max(best, *fs);
  }
  return solve_rec_eps(problem, best + kLexSlack, norm, form);
}

/// True iff some x in X satisfies every scenario (and c_k^T x <= eps when
/// eps is finite).
inline bool check_strictly_robust(const UncertainProblem& problem,
                                  ExtReal eps = ExtReal::infinity()) {
  detail::validate_problem(problem, 1);
  lp::LinearProgram prog;
  for (std::size_t j = 0; j < problem.n; ++j) prog.add_variable(0.0, -lp::kInf, lp::kInf);
  detail::add_domain_rows(prog, problem.x_domain, std::vector<std::size_t>{0});
  for (const auto& s : problem.scenarios) {
    for (std::size_t i = 0; i < s.a_matrix.rows(); ++i)
      prog.add_dense_constraint(s.a_matrix.row(i), lp::Sense::Le, s.rhs[i]);
    if (eps.is_finite()) prog.add_dense_constraint(s.cost, lp::Sense::Le, eps.value());
  }
  return lp::solve(prog).status == lp::Status::Optimal;
}

inline bool check_strictly_robust(const std::vector<HyperplaneScenario>& scenarios) {
  require(!scenarios.empty(), Errc::TooFewScenarios, "no hyperplane scenarios");
  lp::LinearProgram prog;
  const std::size_t n = scenarios.front().a.size();
  for (std::size_t j = 0; j < n; ++j) prog.add_variable(0.0, -lp::kInf, lp::kInf);
  for (const auto& h : scenarios)
    prog.add_dense_constraint(
        h.a, h.kind == HyperplaneKind::Hyperplane ? lp::Sense::Eq : lp::Sense::Le, h.b);
  return lp::solve(prog).status == lp::Status::Optimal;
}

}  // namespace recrob
