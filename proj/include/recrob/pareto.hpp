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

// Pareto-front approximation by sweeping one criterion between the
// lexicographic endpoints.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/norm.hpp"
#include "recrob/scalarization.hpp"
#include "recrob/types.hpp"

namespace recrob {

/// One point of the tradeoff curve. Objective and radius are the values
/// attained by `solution`.
struct ParetoPoint {
  double bound = 0.0;
  double objective_value = 0.0;
  double radius = 0.0;
  RecoverableSolution solution;
};

/// A bound whose scalarization had no feasible solution.
struct SweepGap {
  double bound = 0.0;
  std::string message;
};

struct ParetoFront {
  std::vector<ParetoPoint> points;
  std::vector<SweepGap> gaps;
};

enum class SweepMode { EpsOnObjective, DeltaOnRadius };

/// Orientation of the objective criterion; the radius is always minimized.
enum class ObjectiveSense { Minimize, Maximize };

inline constexpr std::size_t kDefaultSweepPoints = 50;

/// Removes every point that some other point beats by more than tol in
/// both criteria. Order of the survivors is preserved.
inline std::vector<ParetoPoint> dominance_filter(const std::vector<ParetoPoint>& points,
                                                 double tol = 1e-9,
                                                 ObjectiveSense sense = ObjectiveSense::Minimize) {
  const double sign = sense == ObjectiveSense::Minimize ? 1.0 : -1.0;
  std::vector<ParetoPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = sign * points[j].objective_value < sign * points[i].objective_value - tol &&
                  points[j].radius < points[i].radius - tol;
    }
    if (!dominated) out.push_back(points[i]);
  }
  return out;
}

/// k equidistant values from lo to hi, both included.
inline std::vector<double> equidistant(double lo, double hi, std::size_t k) {
  std::vector<double> v(k);
  for (std::size_t i = 0; i < k; ++i)
    v[i] = i + 1 == k ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1);
  return v;
}

namespace detail {

inline ParetoPoint make_point(double bound, RecoverableSolution sol) {
  require(sol.radius.is_finite(), Errc::InfiniteRadius, "sweep solution has an infinite radius");
  ParetoPoint p;
  p.bound = bound;
  p.objective_value = sol.worst_objective;
  p.radius = sol.radius.value();
  p.solution = std::move(sol);
  return p;
}

inline std::string format_bound(double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", b);
  return buf;
}

}  // namespace detail

/// Sweeps k_points bounds on one criterion between the lexicographic
/// endpoints. The endpoints themselves are the lexicographic solutions;
/// interior bounds are solved by Rec(eps) or Rec(delta). Infeasible bounds
/// become gaps. When both endpoints coincide a single point is returned.
inline ParetoFront sweep(const UncertainProblem& problem, const BlockNorm& norm,
                         std::size_t k_points = kDefaultSweepPoints,
                         SweepMode mode = SweepMode::EpsOnObjective,
                         Formulation form = Formulation::Auto) {
  require(k_points >= 2, Errc::InvalidArgument, "a sweep needs at least two points");
  RecoverableSolution obj_first, rad_first;
  try {
    obj_first = lexicographic(problem, norm, LexOrder::ObjectiveFirst, form);
    rad_first = lexicographic(problem, norm, LexOrder::RadiusFirst, form);
  } catch (const Error& e) {
    if (e.code() == Errc::UnboundedScenario || e.code() == Errc::UnboundedObjective ||
        e.code() == Errc::InfeasibleEps)
      throw Error(Errc::UnboundedEndpoint, std::string("lexicographic endpoint: ") + e.what());
    throw;
  }
  require(obj_first.radius.is_finite(), Errc::UnboundedEndpoint,
          "objective-first endpoint has an infinite radius");

  const bool eps_mode = mode == SweepMode::EpsOnObjective;
  const double lo = eps_mode ? obj_first.worst_objective : rad_first.radius.value();
  const double hi = eps_mode ? rad_first.worst_objective : obj_first.radius.value();
  ParetoFront front;
  std::vector<ParetoPoint> raw;
  raw.push_back(detail::make_point(lo, eps_mode ? obj_first : rad_first));
  if (hi - lo <= 1e-9 * std::max(1.0, std::abs(lo))) {
    front.points = raw;
    return front;
  }

  const std::vector<double> bounds = equidistant(lo, hi, k_points);
  for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
    try {
      raw.push_back(detail::make_point(
          bounds[i], eps_mode ? solve_rec_eps(problem, bounds[i], norm, form)
                              : solve_rec_delta(problem, bounds[i], norm, form)));
    } catch (const Error& e) {
      if (e.code() == Errc::InfeasibleEps || e.code() == Errc::InfeasibleDelta) {
        front.gaps.push_back({bounds[i], e.what()});
        continue;
      }
      throw Error(e.code(), "at bound " + detail::format_bound(bounds[i]) + ": " + e.what());
    }
  }
  raw.push_back(detail::make_point(hi, eps_mode ? rad_first : obj_first));
  front.points = dominance_filter(raw);
  return front;
}

}  // namespace recrob
