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

// Portfolio case study over the probability simplex with Euclidean
// recovery distance: instance generation, projections, and the Rec-D,
// Rec-It and Rec-M solvers.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/linalg.hpp"
#include "recrob/pareto.hpp"
#include "recrob/simplex.hpp"
#include "recrob/types.hpp"

namespace recrob::portfolio {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, Weyl increment
/// 0x9e3779b97f4a7c15 and the variant-13 finalizer. split() seeds an
/// independent child stream from the next output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() noexcept { return SplitMix64(next()); }

  /// Uniform integer in [lo, hi] by rejection, so every value is exactly
  /// equally likely and the stream does not depend on the standard library.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t u;
    do u = next();
    while (u >= limit);
    return lo + static_cast<std::int64_t>(u % span);
  }

 private:
  std::uint64_t state_;
};

struct PortfolioInstance {
  std::size_t n = 0;
  std::size_t big_n = 0;
  Matrix profits;  // row k holds p^k
  std::uint64_t seed = 0;
};

/// Profits are independent uniform integers in [1, 100], drawn row by row.
inline PortfolioInstance generate(std::size_t n, std::size_t big_n, std::uint64_t seed) {
  require(n >= 1 && big_n >= 1, Errc::InvalidArgument, "need at least one asset and one scenario");
  PortfolioInstance inst{n, big_n, Matrix(big_n, n), seed};
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < big_n; ++k)
    for (std::size_t i = 0; i < n; ++i) inst.profits(k, i) = static_cast<double>(rng.uniform_int(1, 100));
  return inst;
}

/// Euclidean projection onto {x >= 0, sum x = 1} by sorting and thresholding.
inline Vector project_simplex(std::span<const double> v) {
  require(!v.empty(), Errc::DimensionMismatch, "cannot project an empty vector");
  Vector u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - theta, 0.0);
  return x;
}

struct Tolerances {
  double tol;
  std::size_t max_iter;
};

inline constexpr Tolerances kProjectionDefaults{1e-10, 100000};
inline constexpr Tolerances kCenterDefaults{1e-9, 100000};
inline constexpr Tolerances kRecItDefaults{1e-8, 100000};
inline constexpr Tolerances kRecDDefaults{1e-9, 100000};

// Distances below this count as zero: the unit direction (x - y) / d is
// dominated by rounding there, and a cut built from it need not be valid.
inline constexpr double kNegligibleDistance = 1e-8;

// Largest point set whose enclosing ball is found by enumeration.
inline constexpr std::size_t kExactCenterPoints = 12;

// Cutting-plane runs end after kStallRounds rounds in which neither bound
// moved by kStallImprovement, provided the gap is below kStallGap relative.
inline constexpr std::size_t kStallRounds = 10;
inline constexpr double kStallImprovement = 1e-12;
inline constexpr double kStallGap = 1e-7;

// Rounds a cutting plane may stay slack before it is discarded.
inline constexpr std::size_t kCutPatience = 30;

namespace detail {

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double max_entry(std::span<const double> p) { return *std::max_element(p.begin(), p.end()); }

}  // namespace detail

/// Projection onto {x in simplex : p^T x >= cap_p}. Starts from the simplex
/// projection; when the profit row is violated, runs Dykstra's method
/// between the halfspace and the simplex. A last move toward the most
/// profitable vertex removes any remaining profit shortfall.
inline Vector project_profit_simplex(std::span<const double> v, std::span<const double> p,
                                     double cap_p, double tol = kProjectionDefaults.tol,
                                     std::size_t max_iter = kProjectionDefaults.max_iter) {
  require(v.size() == p.size(), Errc::DimensionMismatch, "point and profit vector differ in length");
  const std::size_t n = v.size();
  const std::size_t best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  require(cap_p <= p[best] + tol, Errc::InfeasibleBound, "profit bound exceeds the best single asset");
  Vector x = project_simplex(v);
  if (dot(p, x) >= cap_p) return x;

  // Dykstra restarts from v itself. It has converged when neither the
  // iterate nor the two correction vectors move.
  const double pp = dot(p, p);
  Vector a(n, 0.0), b(n, 0.0), y(n), w(n);
  Vector cur(v.begin(), v.end());
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    double move = 0.0;
    for (std::size_t i = 0; i < n; ++i) w[i] = cur[i] + a[i];
    const double gap = cap_p - dot(p, w);
    for (std::size_t i = 0; i < n; ++i) y[i] = gap > 0.0 ? w[i] + gap / pp * p[i] : w[i];
    for (std::size_t i = 0; i < n; ++i) {
      const double na = w[i] - y[i];
      move = std::max(move, std::abs(na - a[i]));
      a[i] = na;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] + b[i];
    Vector next = project_simplex(w);
    for (std::size_t i = 0; i < n; ++i) {
      const double nb = w[i] - next[i];
      move = std::max({move, std::abs(nb - b[i]), std::abs(next[i] - cur[i])});
      b[i] = nb;
    }
    cur = std::move(next);
    if (move < tol) break;
  }
  require(it < max_iter, Errc::NoConvergence, "Dykstra projection did not settle");
  x = std::move(cur);
  const double profit = dot(p, x);
  if (profit < cap_p) {
    const double theta = std::min(1.0, (cap_p - profit) / (p[best] - profit));
    for (std::size_t i = 0; i < n; ++i) x[i] *= 1.0 - theta;
    x[best] += theta;
  }
  return x;
}

/// Exact projection onto {x in simplex : p^T x >= cap_p} through the dual:
/// the projection is P_simplex(v + mu p) for the smallest mu >= 0 meeting
/// the profit bound, and mu is found by bisection on that monotone map.
inline Vector project_profit_simplex_dual(std::span<const double> v, std::span<const double> p,
                                          double cap_p) {
  require(v.size() == p.size(), Errc::DimensionMismatch, "point and profit vector differ in length");
  const std::size_t n = v.size();
  const std::size_t best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  require(cap_p <= p[best] + 1e-10, Errc::InfeasibleBound, "profit bound exceeds the best single asset");
  Vector x = project_simplex(v);
  if (dot(p, x) >= cap_p) return x;
  Vector w(n);
  auto at = [&](double mu) {
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + mu * p[i];
    return project_simplex(w);
  };
  double lo = 0.0, hi = 1.0;
  while (dot(p, at(hi)) < cap_p && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (dot(p, at(mid)) >= cap_p ? hi : lo) = mid;
  }
  x = at(hi);
  const double profit = dot(p, x);
  if (profit < cap_p) {
    const double theta = std::min(1.0, (cap_p - profit) / (p[best] - profit));
    for (std::size_t i = 0; i < n; ++i) x[i] *= 1.0 - theta;
    x[best] += theta;
  }
  return x;
}

struct CenterResult {
  Vector x;
  double d = 0.0;
  std::size_t iterations = 0;
};

namespace detail {

// Values f_k(x) and subgradients g_k of convex functions whose maximum is
// nonnegative.
struct Piece {
  double value;
  Vector grad;
};

// Cutting-plane (Kelley) minimization of max_k f_k over the simplex. Each
// evaluation adds the cuts t >= f_k(x) + g_k^T (x' - x) to an LP whose
// optimum is a lower bound; stops once the best value is within tol of it.
// Cuts slack at the last LP optimum for many rounds are dropped.
template <class Oracle>
CenterResult minimize_max(std::size_t n, Oracle&& oracle, Vector x, double tol, std::size_t max_iter) {
  struct Cut {
    Vector g;
    double rhs;
    std::size_t idle = 0;
  };
  std::vector<Cut> cuts;
  CenterResult best{x, HUGE_VAL, 0};
  double lower = 0.0;
  std::size_t stalled = 0;
  for (std::size_t t = 1; t <= max_iter; ++t) {
    const std::vector<Piece> pieces = oracle(x);
    double f = 0.0;
    for (const auto& pc : pieces) f = std::max(f, pc.value);
    if (f < best.d - kStallImprovement) {
      stalled = 0;
    } else {
      ++stalled;
    }
    if (f < best.d) best = {x, f, t};
    best.iterations = t;
    // The LP bound is only as sharp as the kernel's tolerances; when neither
    // side moves for kStallRounds rounds the gap is at that floor.
    const double gap = best.d - lower;
    if (gap <= tol || best.d <= kNegligibleDistance ||
        (stalled >= kStallRounds && gap <= kStallGap * std::max(1.0, best.d)))
      return best;
    for (const auto& pc : pieces) {
      // t >= value + g^T (x' - x)  <=>  g^T x' - t <= g^T x - value
      cuts.push_back({pc.grad, dot(pc.grad, x) - pc.value});
    }

    lp::LinearProgram prog;
    const std::size_t tv = prog.add_variable(1.0, 0.0, lp::kInf);
    std::vector<lp::Term> sum;
    for (std::size_t i = 0; i < n; ++i) sum.push_back({prog.add_variable(0.0, 0.0, 1.0), 1.0});
    prog.add_constraint(sum, lp::Sense::Eq, 1.0);
    for (const auto& c : cuts) {
      std::vector<lp::Term> row{{tv, -1.0}};
      for (std::size_t i = 0; i < n; ++i)
        if (c.g[i] != 0.0) row.push_back({i + 1, c.g[i]});
      prog.add_constraint(std::move(row), lp::Sense::Le, c.rhs);
    }
    const lp::Outcome out = lp::solve(prog);
    require(out.status == lp::Status::Optimal, Errc::NumericalBreakdown, "cutting-plane LP failed");
    if (out.point[tv] > lower + kStallImprovement) stalled = 0;
    lower = std::max(lower, out.point[tv]);
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = std::max(out.point[i + 1], 0.0);
    x = project_simplex(next);

    std::vector<Cut> kept;
    for (auto& c : cuts) {
      const double slack = c.rhs + out.point[tv] - dot(c.g, std::span<const double>(out.point).subspan(1, n));
      c.idle = slack > 1e-9 ? c.idle + 1 : 0;
      if (c.idle < kCutPatience) kept.push_back(std::move(c));
    }
    cuts = std::move(kept);
  }
  throw Error(Errc::NoConvergence, "minimax iteration limit reached, gap " +
                                       recrob::detail::format_bound(best.d - lower));
}

}  // namespace detail

namespace detail {

// Exact smallest enclosing ball by enumerating support sets of at most
// n + 1 points; used for up to kExactCenterPoints points. A support set is
// accepted when its circumcenter is a convex combination of it and the
// ball covers every point.
inline std::optional<CenterResult> enclosing_ball(const std::vector<Vector>& points) {
  const std::size_t m = points.size();
  const std::size_t n = points.front().size();
  if (m > kExactCenterPoints) return std::nullopt;
  std::optional<CenterResult> best;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> sup;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1u) sup.push_back(k);
    if (sup.size() > n + 1) continue;
    const Vector& base = points[sup[0]];
    const std::size_t q = sup.size() - 1;
    // Offsets are scaled to unit size so nearly coincident points still
    // give a well-conditioned Gram system.
    double scale = 0.0;
    for (std::size_t a = 1; a <= q; ++a) scale = std::max(scale, distance(points[sup[a]], base));
    if (q > 0 && scale == 0.0) continue;
    Matrix gram(q, q);
    Vector rhs(q);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        double g = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          g += (points[sup[a + 1]][i] - base[i]) * (points[sup[b + 1]][i] - base[i]);
        gram(a, b) = g / (scale * scale);
      }
      rhs[a] = 0.5 * gram(a, a);
    }
    Vector alpha;
    if (q > 0 && !lp::detail::solve_dense(gram, rhs, alpha)) continue;
    double lambda0 = 1.0;
    bool convex = true;
    for (double a : alpha) {
      lambda0 -= a;
      convex = convex && a >= -1e-12;
    }
    if (!convex || lambda0 < -1e-12) continue;
    Vector c = base;
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t i = 0; i < n; ++i) c[i] += alpha[a] * (points[sup[a + 1]][i] - base[i]);
    const double r = distance(c, base);
    if (best && r >= best->d) continue;
    bool covers = true;
    for (const auto& pt : points) covers = covers && distance(c, pt) <= r * (1.0 + 1e-10) + 1e-15;
    if (covers) best = CenterResult{std::move(c), r, 1};
  }
  return best;
}

inline bool in_simplex(std::span<const double> x, double tol) {
  double sum = 0.0;
  for (double v : x) {
    if (v < -tol) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

}  // namespace detail

/// min over the simplex of max_k ||x - points[k]||. When the points lie in
/// the simplex the answer is their smallest enclosing ball, whose center is
/// in their convex hull; small sets are solved exactly that way. Otherwise
/// the unit subgradients toward each point feed a cutting-plane model and
/// the returned best iterate is within tol of the optimum, started at
/// `start` when given, else at the projected mean.
inline CenterResult center_minmax(const std::vector<Vector>& points,
                                  double tol = kCenterDefaults.tol,
                                  std::size_t max_iter = kCenterDefaults.max_iter,
                                  std::span<const double> start = {}) {
  require(!points.empty(), Errc::InvalidArgument, "center of an empty point set");
  const std::size_t n = points.front().size();
  bool inside = true;
  for (const auto& q : points) {
    require(q.size() == n, Errc::DimensionMismatch, "points of differing dimension");
    inside = inside && detail::in_simplex(q, 1e-12);
  }
  if (inside) {
    if (auto ball = detail::enclosing_ball(points)) return *ball;
  }
  Vector x(n, 0.0);
  if (start.empty()) {
    for (const auto& q : points)
      for (std::size_t i = 0; i < n; ++i) x[i] += q[i] / static_cast<double>(points.size());
  } else {
    x.assign(start.begin(), start.end());
  }
  auto oracle = [&](const Vector& at) {
    std::vector<detail::Piece> pieces;
    for (const auto& q : points) {
      const double d = detail::distance(at, q);
      if (d <= kNegligibleDistance) continue;
      Vector g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = (at[i] - q[i]) / d;
      pieces.push_back({d, std::move(g)});
    }
    return pieces;
  };
  return detail::minimize_max(n, oracle, project_simplex(x), tol, max_iter);
}

struct RecResult {
  Vector x;
  std::vector<Vector> recoveries;
  double d = 0.0;
  std::size_t iterations = 0;
  // Rec-It only: the center objective after each outer iteration.
  std::vector<double> history;
};

/// Nearest points of G_k = {y in simplex : p^k^T y >= cap_p} and the radius
/// max_k ||x - y^k||.
inline RecResult evaluate(const PortfolioInstance& inst, std::span<const double> x, double cap_p) {
  RecResult r{Vector(x.begin(), x.end()), {}, 0.0, 0, {}};
  for (std::size_t k = 0; k < inst.big_n; ++k) {
    r.recoveries.push_back(project_profit_simplex_dual(x, inst.profits.row(k), cap_p));
    r.d = std::max(r.d, detail::distance(x, r.recoveries.back()));
  }
  return r;
}

/// Largest bound for which every G_k is nonempty: min_k max_i p^k_i.
inline double z_max(const PortfolioInstance& inst) {
  double z = HUGE_VAL;
  for (std::size_t k = 0; k < inst.big_n; ++k) z = std::min(z, detail::max_entry(inst.profits.row(k)));
  return z;
}

struct MaxMinProfit {
  double value = 0.0;
  Vector x;
};

/// Best worst-case profit of one portfolio, max_x min_k p^k^T x, with a
/// maximizer; for bounds up to this value the radius is zero.
inline MaxMinProfit max_min_profit(const PortfolioInstance& inst) {
  lp::LinearProgram prog;
  const std::size_t t = prog.add_variable(-1.0, -lp::kInf, lp::kInf);
  std::vector<lp::Term> sum;
  for (std::size_t i = 0; i < inst.n; ++i) sum.push_back({prog.add_variable(0.0), 1.0});
  prog.add_constraint(sum, lp::Sense::Eq, 1.0);
  for (std::size_t k = 0; k < inst.big_n; ++k) {
    std::vector<lp::Term> row{{t, 1.0}};
    for (std::size_t i = 0; i < inst.n; ++i) row.push_back({i + 1, -inst.profits(k, i)});
    prog.add_constraint(row, lp::Sense::Le, 0.0);
  }
  const lp::Outcome out = lp::solve(prog);
  require(out.status == lp::Status::Optimal, Errc::NumericalBreakdown, "max-min profit LP failed");
  Vector x(out.point.begin() + 1, out.point.end());
  return {out.point[t], project_simplex(x)};
}

inline double z_min(const PortfolioInstance& inst) { return max_min_profit(inst).value; }

namespace detail {

inline void check_bound(const PortfolioInstance& inst, double cap_p) {
  require(std::isfinite(cap_p), Errc::NonFiniteData, "profit bound must be finite");
  require(cap_p <= z_max(inst) + 1e-10, Errc::InfeasibleBound,
          "profit bound exceeds the best asset of some scenario");
}

// Below the max-min profit one portfolio meets the bound in every
// scenario; both solvers return it directly.
inline std::optional<RecResult> common_point(const PortfolioInstance& inst, double cap_p) {
  const MaxMinProfit mm = max_min_profit(inst);
  if (cap_p > mm.value) return std::nullopt;
  return evaluate(inst, mm.x, cap_p);
}

}  // namespace detail

/// Rec-It: project x onto every G_k, recenter with center_minmax (warm
/// started at x), repeat until the center objective changes by less than
/// tol. The reported d is the radius of the final x.
inline RecResult solve_rec_it(const PortfolioInstance& inst, double cap_p,
                              double tol = kRecItDefaults.tol,
                              std::size_t max_iter = kRecItDefaults.max_iter) {
  detail::check_bound(inst, cap_p);
  if (auto common = detail::common_point(inst, cap_p)) return *common;
  Vector x = project_simplex(Vector(inst.n, 1.0 / static_cast<double>(inst.n)));
  std::vector<double> history;
  for (std::size_t t = 1; t <= max_iter; ++t) {
    RecResult at = evaluate(inst, x, cap_p);
    if (at.d == 0.0) {
      at.iterations = t;
      at.history = std::move(history);
      return at;
    }
    const CenterResult c = center_minmax(at.recoveries, kCenterDefaults.tol,
                                         kCenterDefaults.max_iter, x);
    x = c.x;
    history.push_back(c.d);
    if (history.size() >= 2 && std::abs(history[history.size() - 2] - c.d) < tol) {
      RecResult out = evaluate(inst, x, cap_p);
      out.iterations = t;
      out.history = std::move(history);
      return out;
    }
  }
  throw Error(Errc::NoConvergence, "alternating projections hit the iteration limit");
}

/// Rec-D: minimizes r(x) = max_k dist(x, G_k) over the simplex directly,
/// with subgradients (x - y^k) / ||x - y^k|| from the nearest points y^k.
/// The returned best iterate is within tol of the optimal radius.
inline RecResult solve_rec_d(const PortfolioInstance& inst, double cap_p,
                             double tol = kRecDDefaults.tol,
                             std::size_t max_iter = kRecDDefaults.max_iter) {
  detail::check_bound(inst, cap_p);
  if (auto common = detail::common_point(inst, cap_p)) return *common;
  auto oracle = [&](const Vector& x) {
    std::vector<detail::Piece> pieces;
    const RecResult at = evaluate(inst, x, cap_p);
    for (const auto& y : at.recoveries) {
      const double d = detail::distance(x, y);
      if (d <= kNegligibleDistance) continue;
      Vector g(inst.n);
      for (std::size_t i = 0; i < inst.n; ++i) g[i] = (x[i] - y[i]) / d;
      pieces.push_back({d, std::move(g)});
    }
    return pieces;
  };
  const CenterResult c = detail::minimize_max(
      inst.n, oracle, project_simplex(Vector(inst.n, 1.0 / static_cast<double>(inst.n))), tol, max_iter);
  RecResult out = evaluate(inst, c.x, cap_p);
  out.iterations = c.iterations;
  return out;
}

namespace detail {

struct BallMax {
  double value;
  Vector y;
  Vector grad;  // supergradient of the value with respect to x
};

// max p^T y over the simplex intersected with the ball of radius delta
// around x (x in the simplex). The maximizer is P(x + t p) with the
// multiplier t set by bisection so that the ball is tight, and (y - x) / t
// is a supergradient. When the best face is within reach the ball is slack.
inline BallMax max_profit_in_ball(std::span<const double> x, std::span<const double> p, double delta) {
  const std::size_t n = x.size();
  const double top = max_entry(p);
  Vector face;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] == top) {
      idx.push_back(i);
      face.push_back(x[i]);
    }
  const Vector on_face = project_simplex(face);
  Vector far(n, 0.0);
  for (std::size_t j = 0; j < idx.size(); ++j) far[idx[j]] = on_face[j];
  if (distance(far, x) <= delta) return {top, far, Vector(n, 0.0)};

  auto at = [&](double t) {
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + t * p[i];
    return project_simplex(w);
  };
  double lo = 0.0, hi = 1.0;
  while (distance(at(hi), x) < delta) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (distance(at(mid), x) < delta ? lo : hi) = mid;
  }
  const double t = lo > 0.0 ? lo : hi;
  BallMax out{0.0, at(t), Vector(n)};
  out.value = dot(p, out.y);
  for (std::size_t i = 0; i < n; ++i) out.grad[i] = (out.y[i] - x[i]) / t;
  return out;
}

}  // namespace detail

struct RecPResult {
  Vector x;
  std::vector<Vector> recoveries;
  double profit = 0.0;  // min over scenarios of the recovered profit
  double d = 0.0;
  std::size_t iterations = 0;
};

/// Rec-P: maximize the worst-case profit min_k max{p^k y : y in simplex,
/// |y - x| <= delta} over x in the simplex. Each inner value is concave in
/// x, so the cutting-plane routine runs on z_max minus it.
inline RecPResult solve_rec_p(const PortfolioInstance& inst, double delta,
                              double tol = kRecDDefaults.tol,
                              std::size_t max_iter = kRecDDefaults.max_iter) {
  require(std::isfinite(delta) && delta >= 0.0, Errc::InvalidArgument,
          "delta must be finite and nonnegative");
  if (delta == 0.0) {
    const MaxMinProfit mm = max_min_profit(inst);
    return {mm.x, std::vector<Vector>(inst.big_n, mm.x), mm.value, 0.0, 0};
  }
  const double top = z_max(inst);
  auto oracle = [&](const Vector& x) {
    std::vector<detail::Piece> pieces;
    for (std::size_t k = 0; k < inst.big_n; ++k) {
      detail::BallMax b = detail::max_profit_in_ball(x, inst.profits.row(k), delta);
      for (double& g : b.grad) g = -g;
      pieces.push_back({top - b.value, std::move(b.grad)});
    }
    return pieces;
  };
  const CenterResult c = detail::minimize_max(
      inst.n, oracle, project_simplex(Vector(inst.n, 1.0 / static_cast<double>(inst.n))), tol, max_iter);
  RecPResult out{c.x, {}, HUGE_VAL, 0.0, c.iterations};
  for (std::size_t k = 0; k < inst.big_n; ++k) {
    detail::BallMax b = detail::max_profit_in_ball(c.x, inst.profits.row(k), delta);
    out.profit = std::min(out.profit, b.value);
    out.d = std::max(out.d, detail::distance(b.y, c.x));
    out.recoveries.push_back(std::move(b.y));
  }
  return out;
}

enum class Method { RecD, RecIt, RecM, RecP };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::RecD: return "rec-d";
    case Method::RecIt: return "rec-it";
    case Method::RecM: return "rec-m";
    case Method::RecP: return "rec-p";
  }
  return "?";
}

/// Method used for bound index i of k under `method`; Rec-M takes Rec-D for
/// the first ceil(2k/3) bounds and Rec-It above.
inline Method method_for(Method method, std::size_t i, std::size_t k) {
  if (method != Method::RecM) return method;
  return i < (2 * k + 2) / 3 ? Method::RecD : Method::RecIt;
}

struct PortfolioPoint {
  ParetoPoint point;
  Method method = Method::RecD;
  std::size_t iterations = 0;
};

/// Front over k equidistant profit bounds in [z_min, z_max], or for Rec-P
/// over k equidistant radius bounds in [0, d(z_max)]. Objective values are
/// worst-case profits of the recoveries (maximized); the embedded solutions
/// store their negation as worst_objective.
inline std::vector<PortfolioPoint> pareto_portfolio(const PortfolioInstance& inst, std::size_t k_points,
                                                    Method method, unsigned jobs = 1,
                                                    double rec_it_tol = kRecItDefaults.tol) {
  require(k_points >= 2, Errc::InvalidArgument, "a sweep needs at least two points");
  const std::vector<double> bounds =
      method == Method::RecP ? equidistant(0.0, solve_rec_d(inst, z_max(inst)).d, k_points)
                             : equidistant(z_min(inst), z_max(inst), k_points);
  auto solve_one = [&](std::size_t i) {
    const Method m = method_for(method, i, k_points);
    PortfolioPoint pp;
    pp.point.bound = bounds[i];
    pp.method = m;
    try {
      if (m == Method::RecP) {
        RecPResult r = solve_rec_p(inst, bounds[i]);
        pp.point.objective_value = r.profit;
        pp.point.radius = r.d;
        pp.point.solution = {r.x, std::move(r.recoveries), ExtReal(r.d), -r.profit};
        pp.iterations = r.iterations;
        return pp;
      }
      RecResult r = m == Method::RecD ? solve_rec_d(inst, bounds[i]) : solve_rec_it(inst, bounds[i], rec_it_tol);
      double profit = HUGE_VAL;
      for (std::size_t s = 0; s < inst.big_n; ++s)
        profit = std::min(profit, dot(inst.profits.row(s), r.recoveries[s]));
      pp.point.objective_value = profit;
      pp.point.radius = r.d;
      pp.point.solution = {r.x, std::move(r.recoveries), ExtReal(r.d), -profit};
      pp.iterations = r.iterations;
      return pp;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(m == Method::RecP ? "at radius bound " : "at profit bound ") +
                                recrob::detail::format_bound(bounds[i]) + ": " + e.what());
    }
  };

  std::vector<PortfolioPoint> raw(k_points);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < k_points; ++i) raw[i] = solve_one(i);
  } else {
    for (std::size_t lo = 0; lo < k_points; lo += jobs) {
      std::vector<std::future<PortfolioPoint>> batch;
      for (std::size_t i = lo; i < std::min<std::size_t>(k_points, lo + jobs); ++i)
        batch.push_back(std::async(std::launch::async, solve_one, i));
      for (std::size_t i = 0; i < batch.size(); ++i) raw[lo + i] = batch[i].get();
    }
  }

  std::vector<ParetoPoint> pts;
  for (const auto& r : raw) pts.push_back(r.point);
  const std::vector<ParetoPoint> kept = dominance_filter(pts, 1e-9, ObjectiveSense::Maximize);
  std::vector<PortfolioPoint> out;
  std::size_t j = 0;
  for (const auto& r : raw)
    if (j < kept.size() && kept[j].bound == r.point.bound) {
      out.push_back(r);
      ++j;
    }
  return out;
}

}  // namespace recrob::portfolio
