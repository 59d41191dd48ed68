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

// Block-norm evaluation and point-to-set distances.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/linalg.hpp"
#include "recrob/norm.hpp"
#include "recrob/simplex.hpp"
#include "recrob/types.hpp"

namespace recrob::geometry {

/// ||v|| = min { sum beta_i : v = sum beta_i e_i, beta >= 0 } over Ext(B).
inline double norm_value_primal(const BlockNorm& norm, std::span<const double> v) {
  const std::size_t n = v.size();
  const auto gens = primal_generators(norm, n);
  lp::LinearProgram prog;
  for (std::size_t i = 0; i < gens.size(); ++i) prog.add_variable(1.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<lp::Term> terms;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i][j] != 0.0) terms.push_back({i, gens[i][j]});
    prog.add_constraint(std::move(terms), lp::Sense::Eq, v[j]);
  }
  const lp::Outcome out = lp::solve(prog);
  require(out.status == lp::Status::Optimal, Errc::InfeasibleDecomposition,
          "vector is not a nonnegative combination of the unit-ball generators");
  return out.objective_value;
}

/// ||v|| = max_i v^T e°_i over Ext(B°).
inline double norm_value_polar(const BlockNorm& norm, std::span<const double> v) {
  const auto gens = polar_generators(norm, v.size());
  double best = -HUGE_VAL;
  for (const auto& g : gens) best = std::max(best, dot(v, g));
  return best;
}

/// Evaluates the norm with whichever representation it carries.
inline double norm_value(const BlockNorm& norm, std::span<const double> v) {
  switch (norm.kind()) {
    case NormKind::ExtremePoints: return norm_value_primal(norm, v);
    case NormKind::PolarExtremePoints: return norm_value_polar(norm, v);
    case NormKind::BuiltinL1: return norm1(v);
    case NormKind::BuiltinL2: return norm2(v);
    case NormKind::BuiltinLinf: return norm_inf(v);
  }
  return 0.0;
}

/// Distance from x to y, measured as ||y - x||.
inline double distance(const BlockNorm& norm, std::span<const double> x,
                       std::span<const double> y) {
  return norm_value(norm, subtract(y, x));
}

/// ||a||° = max { a^T y : ||y|| <= 1 }.
inline double dual_norm_value(const BlockNorm& norm, std::span<const double> a) {
  switch (norm.kind()) {
    case NormKind::ExtremePoints: {
      norm.check_dimension(a.size());
      double best = -HUGE_VAL;
      for (const auto& g : norm.generators()) best = std::max(best, dot(a, g));
      return best;
    }
    case NormKind::PolarExtremePoints: {
      // The polar ball's extreme points generate the dual norm.
      const BlockNorm dual = BlockNorm::from_extreme_points(norm.generators(), norm.gauge());
      return norm_value_primal(dual, a);
    }
    case NormKind::BuiltinL1: return norm_inf(a);
    case NormKind::BuiltinL2: return norm2(a);
    case NormKind::BuiltinLinf: return norm1(a);
  }
  return 0.0;
}

/// Distance from x to the hyperplane {y : a^T y = b}.
inline double dist_point_hyperplane(std::span<const double> x, std::span<const double> a,
                                    double b, const BlockNorm& norm) {
  require(norm_inf(a) > 0.0, Errc::ZeroNormal, "hyperplane normal is zero");
  const double gap = dot(a, x) - b;
  if (gap == 0.0) return 0.0;
  if (gap < 0.0) return -gap / dual_norm_value(norm, a);
  Vector neg(a.begin(), a.end());
  for (double& v : neg) v = -v;
  return gap / dual_norm_value(norm, neg);
}

/// Distance from x to the halfspace {y : a^T y <= b}.
inline double dist_point_halfspace(std::span<const double> x, std::span<const double> a,
                                   double b, const BlockNorm& norm) {
  require(norm_inf(a) > 0.0, Errc::ZeroNormal, "halfspace normal is zero");
  const double gap = dot(a, x) - b;
  if (gap <= 0.0) return 0.0;
  Vector neg(a.begin(), a.end());
  for (double& v : neg) v = -v;
  return gap / dual_norm_value(norm, neg);
}

enum class Formulation { Auto, PrimalGenerators, PolarFacets };

/// How ||y - x|| <= r is written into an LP.
struct DistanceModel {
  bool primal = true;
  std::vector<Vector> generators;
};

inline DistanceModel resolve_distance_model(const BlockNorm& norm, std::size_t n,
                                            Formulation form = Formulation::Auto) {
  if (norm.kind() == NormKind::BuiltinL2)
    throw Error(Errc::UnsupportedNorm,
                "l2 is not a block norm; this path needs a polyhedral unit ball");
  if (form == Formulation::Auto) {
    switch (norm.kind()) {
      case NormKind::ExtremePoints:
      case NormKind::BuiltinL1: form = Formulation::PrimalGenerators; break;
      default: form = Formulation::PolarFacets; break;
    }
  }
  if (form == Formulation::PrimalGenerators) return {true, primal_generators(norm, n)};
  return {false, polar_generators(norm, n)};
}

/// Appends rows forcing ||y - x|| <= r. `x` and `y` are variable indices;
/// when `x` is empty, `x_fixed` supplies x as data.
inline void add_distance_rows(lp::LinearProgram& prog, const DistanceModel& model,
                              std::span<const std::size_t> x, std::span<const double> x_fixed,
                              std::span<const std::size_t> y, std::size_t r) {
  const std::size_t n = y.size();
  if (model.primal) {
    const std::size_t first = prog.num_vars();
    for (std::size_t i = 0; i < model.generators.size(); ++i) prog.add_variable(0.0);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<lp::Term> terms{{y[j], 1.0}};
      double rhs = 0.0;
      if (x.empty())
        rhs = x_fixed[j];
      else
        terms.push_back({x[j], -1.0});
      for (std::size_t i = 0; i < model.generators.size(); ++i)
        if (model.generators[i][j] != 0.0) terms.push_back({first + i, -model.generators[i][j]});
      prog.add_constraint(std::move(terms), lp::Sense::Eq, rhs);
    }
    std::vector<lp::Term> sum{{r, -1.0}};
    for (std::size_t i = 0; i < model.generators.size(); ++i) sum.push_back({first + i, 1.0});
    prog.add_constraint(std::move(sum), lp::Sense::Le, 0.0);
  } else {
    for (const auto& g : model.generators) {
      std::vector<lp::Term> terms{{r, -1.0}};
      double rhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (g[j] == 0.0) continue;
        terms.push_back({y[j], g[j]});
        if (x.empty())
          rhs += g[j] * x_fixed[j];
        else
          terms.push_back({x[j], -g[j]});
      }
      prog.add_constraint(std::move(terms), lp::Sense::Le, rhs);
    }
  }
}

struct PointDistance {
  double distance = 0.0;
  Vector nearest;
};

/// min ||y - x|| over y in poly; nullopt when the polyhedron is empty.
inline std::optional<PointDistance> dist_point_polyhedron(
    std::span<const double> x, const Polyhedron& poly, const BlockNorm& norm,
    Formulation form = Formulation::Auto) {
  const std::size_t n = x.size();
  require(poly.is_whole_space() || poly.dimension() == n, Errc::DimensionMismatch,
          "polyhedron dimension differs from point dimension");
  require(poly.d_matrix.rows() == poly.e_vector.size(), Errc::DimensionMismatch,
          "polyhedron rows and rhs length differ");
  const DistanceModel model = resolve_distance_model(norm, n, form);

  lp::LinearProgram prog;
  const std::size_t r = prog.add_variable(1.0);
  std::vector<std::size_t> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = prog.add_variable(0.0, -lp::kInf, lp::kInf);
  for (std::size_t i = 0; i < poly.d_matrix.rows(); ++i)
    prog.add_dense_constraint(poly.d_matrix.row(i), lp::Sense::Le, poly.e_vector[i], y[0]);
  add_distance_rows(prog, model, {}, x, y, r);

  const lp::Outcome out = lp::solve(prog);
  if (out.status == lp::Status::Infeasible) return std::nullopt;
  require(out.status == lp::Status::Optimal, Errc::NumericalBreakdown,
          "distance LP reported unbounded");
  PointDistance pd;
  pd.distance = std::max(out.point[r], 0.0);
  pd.nearest.assign(out.point.begin() + 1, out.point.begin() + 1 + n);
  return pd;
}

}  // namespace recrob::geometry
