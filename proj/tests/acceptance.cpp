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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "recrob/geometry.hpp"
#include "recrob/model.hpp"
#include "recrob/pareto.hpp"
#include "recrob/portfolio.hpp"
#include "recrob/reduction.hpp"
#include "recrob/scalarization.hpp"
#include "recrob/simplex.hpp"

namespace {

using namespace recrob;

const double kSqrt2 = std::sqrt(2.0);

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string str(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict incircle_example() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lines = fixtures::incircle_lines();
  const auto sol = solve_rec_eps_hyperplanes(lines, BlockNorm::l2());
  const double want = 2 - kSqrt2;
  const double ex = std::max(std::abs(sol.x[0] - want), std::abs(sol.x[1] - want));
  const double er = std::abs(sol.radius - want);
  // 140 divisions give 10011 convex weights.
  const double hull_star = sampled_hull_radius(lines, sol.x, BlockNorm::l2(), 140);
  const double hull_mid = sampled_hull_radius(lines, Vector{0.5, 0.5}, BlockNorm::l2(), 140);
  const double t = seconds_since(t0);
  Verdict v;
  v.pass = ex <= 1e-6 && er <= 1e-6 && std::abs(hull_star - kSqrt2 * want) <= 1e-3 &&
           std::abs(hull_mid - 1 / kSqrt2) <= 1e-3 && t < 1.0;
  v.detail = str("x*=(%.9f, %.9f) r*=%.9f (tol 1e-6)", sol.x[0], sol.x[1], sol.radius) +
             str("; hull r(x*)=%.6f r(mid)=%.6f (tol 1e-3); %.3f s < 1 s", hull_star, hull_mid, t);
  return v;
}

std::vector<oracle::Polygon> polygons(const fixtures::RandomInstance& inst) {
  std::vector<oracle::Polygon> sets;
  for (const auto& s : inst.problem.scenarios) {
    std::vector<oracle::Row> rows;
    for (std::size_t i = 0; i < s.a_matrix.rows(); ++i)
      rows.push_back({{s.a_matrix(i, 0), s.a_matrix(i, 1)}, -1, s.rhs[i]});
    rows.push_back({s.cost, -1, inst.eps});
    sets.emplace_back(rows);
  }
  return sets;
}

std::vector<fixtures::RandomInstance> grid_instances() {
  std::vector<fixtures::RandomInstance> out;
  for (std::uint64_t seed = 0; seed < 10; ++seed) out.push_back(fixtures::random_2d_instance(7000 + seed));
  return out;
}

Verdict grid_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool below = true;
  for (const auto& inst : grid_instances()) {
    const auto sets = polygons(inst);
    double best = HUGE_VAL;
    for (int i = 0; i <= 500; ++i)
      for (int j = 0; j <= 500; ++j) {
        const oracle::Vec x{-5 + 0.02 * i, -5 + 0.02 * j};
        double r = 0.0;
        for (const auto& g : sets) {
          r = std::max(r, g.l1_distance(x));
          if (r >= best) break;
        }
        best = std::min(best, r);
      }
    const double lp = solve_rec_eps(inst.problem, inst.eps, BlockNorm::l1()).radius.value();
    worst = std::max(worst, std::abs(lp - best));
    below = below && lp <= best + 1e-9;
  }
  const double t = seconds_since(t0);
  return {worst <= 0.02 && below && t < 30.0,
          str("10 instances, max |r_lp - r_grid| = %.6f (tol 0.02), ", worst) +
              (below ? "lp <= grid" : "lp above grid") + str("; %.2f s < 30 s", t)};
}

// Extreme points of the l1 ball (+-e_j) and of the linf ball (all sign vectors).
std::vector<Vector> cross_points(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < n; ++j)
    for (double s : {1.0, -1.0}) {
      Vector e(n, 0.0);
      e[j] = s;
      out.push_back(e);
    }
  return out;
}

std::vector<Vector> cube_points(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

Verdict norm_characterizations() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-10, 10);
  double worst = 0.0;
  std::size_t evaluated = 0;
  for (std::size_t n : {2u, 3u}) {
    std::vector<std::pair<BlockNorm, BlockNorm>> pairs;
    pairs.emplace_back(BlockNorm::from_extreme_points(cross_points(n)),
                       BlockNorm::from_polar_extreme_points(cube_points(n)));
    pairs.emplace_back(BlockNorm::from_extreme_points(cube_points(n)),
                       BlockNorm::from_polar_extreme_points(cross_points(n)));
    for (int p = 0; p < 10; ++p) {
      auto pair = oracle::random_symmetric_polytope(n, 4, rng);
      pairs.emplace_back(BlockNorm::from_extreme_points(pair.primal), BlockNorm::from_polar_extreme_points(pair.polar));
    }
    for (int t = 0; t < 1000; ++t) {
      Vector v(n);
      for (auto& x : v) x = u(rng);
      for (const auto& [primal, polar] : pairs) {
        worst = std::max(worst, std::abs(geometry::norm_value_primal(primal, v) - geometry::norm_value_polar(polar, v)));
        ++evaluated;
      }
    }
  }
  return {worst <= 1e-8, str("%.0f evaluations (l1, linf, 10 polytopes per dimension), max discrepancy %.3g (tol 1e-8)",
                             double(evaluated), worst)};
}

Verdict lipschitz() {
  std::size_t violations = 0;
  double slack = -HUGE_VAL;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = fixtures::random_2d_instance(8000 + seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-5, 5);
    for (const auto& norm : {BlockNorm::l1(), BlockNorm::linf()})
      for (int t = 0; t < 100; ++t) {
        const Vector x{u(rng), u(rng)};
        const Vector xp{u(rng), u(rng)};
        const double gap = std::abs(radius(x, inst.problem, inst.eps, norm).value.value() -
                                    radius(xp, inst.problem, inst.eps, norm).value.value()) -
                           geometry::distance(norm, x, xp);
        slack = std::max(slack, gap);
        if (gap > 1e-9) ++violations;
      }
  }
  return {violations == 0,
          str("10 instances x 100 pairs (l1 and linf), %.0f violations, max |dr| - d = %.3g (tol 1e-9)",
              double(violations), slack)};
}

Verdict worst_case_multiplicity() {
  std::size_t checked = 0, smallest = 1000;
  for (const auto& inst : grid_instances()) {
    const auto sol = solve_rec_eps(inst.problem, inst.eps, BlockNorm::l1());
    if (sol.radius.value() <= 1e-6) continue;
    ++checked;
    smallest = std::min(smallest, worst_case_set(sol.x, inst.problem, inst.eps, BlockNorm::l1()).size());
  }
  return {checked > 0 && smallest >= 2,
          str("%.0f instances with r* > 1e-6, smallest |worst-case set| = %.0f (need >= 2)", double(checked),
              double(checked ? smallest : 0))};
}

Verdict reduction_soundness() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = fixtures::random_rhs_instance(6000 + seed, 50);
    for (double extra : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double eps = inst.eps + extra;
      const double rv = solve_rec_eps(inst.vertices, eps, BlockNorm::l1()).radius.value();
      const double ra = solve_rec_eps(inst.augmented, eps, BlockNorm::l1()).radius.value();
      worst = std::max(worst, std::abs(rv - ra));
    }
  }
  const auto lines = fixtures::incircle_lines();
  const auto sol = solve_rec_eps_hyperplanes(lines, BlockNorm::l2());
  const double hull = sampled_hull_radius(lines, sol.x, BlockNorm::l2(), 140);
  const bool control = std::abs(sol.radius - 0.586) <= 1e-3 && std::abs(hull - 0.828) <= 1e-3;
  return {worst <= 1e-7 && control,
          str("10 instances x 5 eps, max |r_vertices - r_augmented| = %.3g (tol 1e-7); negative control "
              "vertex %.4f vs hull %.4f",
              worst, sol.radius, hull)};
}

Verdict relaxation_removal() {
  double worst = 0.0;
  std::size_t removed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = fixtures::random_2d_instance(5000 + seed);
    const UncertainProblem nested = fixtures::with_relaxed_copies(inst.problem, seed, 3);
    const Reduction red = remove_relaxed_scenarios(nested);
    removed += red.removed.size();
    for (int i = 0; i < 10; ++i) {
      const double eps = inst.eps + 0.5 * i;
      worst = std::max(worst, std::abs(solve_rec_eps(nested, eps, BlockNorm::l1()).radius.value() -
                                       solve_rec_eps(red.reduced, eps, BlockNorm::l1()).radius.value()));
    }
  }
  return {worst <= 1e-7 && removed >= 30,
          str("10 instances with 3 relaxed copies each, %.0f scenarios removed, max radius change %.3g over "
              "10 eps values (tol 1e-7)",
              double(removed), worst)};
}

Verdict caratheodory() {
  std::size_t largest = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = fixtures::random_2d_instance(4500 + seed, 6, 6);
    const Witness w = caratheodory_witness(inst.problem, inst.eps, BlockNorm::l1());
    UncertainProblem sub = inst.problem;
    sub.scenarios.clear();
    for (std::size_t k : w.indices) sub.scenarios.push_back(inst.problem.scenarios[k]);
    const double full = solve_rec_eps(inst.problem, inst.eps, BlockNorm::l1()).radius.value();
    const double part = solve_rec_eps(sub, inst.eps, BlockNorm::l1()).radius.value();
    largest = std::max(largest, w.indices.size());
    worst = std::max(worst, std::abs(full - part));
  }
  return {largest <= 3 && worst <= 1e-6,
          str("5 instances (n=2, N=6), largest witness %.0f (need <= 3), max radius gap %.3g (tol 1e-6)",
              double(largest), worst)};
}

Verdict portfolio_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, drop = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = portfolio::generate(5, 5, seed);
    const auto bounds = equidistant(portfolio::z_min(inst), portfolio::z_max(inst), 10);
    double prev_d = -HUGE_VAL, prev_it = -HUGE_VAL;
    for (double cap : bounds) {
      const double d = portfolio::solve_rec_d(inst, cap).d;
      const double it = portfolio::solve_rec_it(inst, cap).d;
      worst = std::max(worst, std::abs(d - it));
      drop = std::max({drop, prev_d - d, prev_it - it});
      prev_d = d;
      prev_it = it;
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-3 && drop <= 1e-9 && t < 300.0,
          str("100 seeds x 10 bounds, max |d_RecD - d_RecIt| = %.3g (tol 1e-3), largest radius decrease %.3g "
              "(tol 1e-9); %.1f s < 300 s",
              worst, std::max(drop, 0.0), t)};
}

Verdict sweep_consistency() {
  double drop = 0.0, anchor = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = fixtures::random_2d_instance(3000 + seed);
    const auto& p = inst.problem;
    const BlockNorm norm = BlockNorm::l1();
    const auto lo = lexicographic(p, norm, LexOrder::ObjectiveFirst);
    const auto hi = lexicographic(p, norm, LexOrder::RadiusFirst);
    for (auto mode : {SweepMode::EpsOnObjective, SweepMode::DeltaOnRadius}) {
      auto pts = sweep(p, norm, 20, mode).points;
      std::sort(pts.begin(), pts.end(),
                [](const ParetoPoint& a, const ParetoPoint& b) { return a.bound < b.bound; });
      for (std::size_t i = 1; i < pts.size(); ++i) {
        if (mode == SweepMode::EpsOnObjective) {
          // Looser objective bound: radius may only shrink.
          drop = std::max(drop, pts[i].radius - pts[i - 1].radius);
        } else {
          drop = std::max(drop, pts[i].objective_value - pts[i - 1].objective_value);
        }
      }
      const auto& obj_end = mode == SweepMode::EpsOnObjective ? pts.front() : pts.back();
      const auto& rad_end = mode == SweepMode::EpsOnObjective ? pts.back() : pts.front();
      anchor = std::max({anchor, std::abs(obj_end.objective_value - lo.worst_objective),
                         std::abs(obj_end.radius - lo.radius.value()),
                         std::abs(rad_end.objective_value - hi.worst_objective),
                         std::abs(rad_end.radius - hi.radius.value())});
    }
  }
  return {drop <= 1e-9 && anchor <= 1e-6,
          str("5 instances, eps and delta sweeps of 20 points, worst monotonicity violation %.3g (tol 1e-9), "
              "max endpoint gap %.3g (tol 1e-6)",
              std::max(drop, 0.0), anchor)};
}

Verdict simplex_kernel() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> sense(0, 5);
  double worst = 0.0;
  std::size_t mismatches = 0;
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dim(rng), m = dim(rng);
    lp::LinearProgram prog;
    oracle::Vec c(n);
    for (int j = 0; j < n; ++j) prog.add_variable(c[j] = coef(rng));
    std::vector<oracle::Row> rows;
    for (int i = 0; i < m; ++i) {
      oracle::Vec a(n);
      for (auto& x : a) x = coef(rng);
      const double b = coef(rng);
      const int s = sense(rng);
      const int os = s < 4 ? -1 : (s == 4 ? 1 : 0);
      rows.push_back({a, os, b});
      prog.add_dense_constraint(a, os < 0 ? lp::Sense::Le : (os > 0 ? lp::Sense::Ge : lp::Sense::Eq), b);
    }
    const auto expect = oracle::brute_force_lp(c, rows);
    const auto got = lp::solve(prog);
    const lp::Status want = expect.status == oracle::LpResult::Optimal      ? lp::Status::Optimal
                            : expect.status == oracle::LpResult::Infeasible ? lp::Status::Infeasible
                                                                            : lp::Status::Unbounded;
    ++counts[static_cast<int>(expect.status == oracle::LpResult::Optimal ? 0
                              : expect.status == oracle::LpResult::Infeasible ? 1 : 2)];
    if (got.status != want) {
      ++mismatches;
      continue;
    }
    if (want == lp::Status::Optimal) worst = std::max(worst, std::abs(got.objective_value - expect.value));
  }
  return {mismatches == 0 && worst <= 1e-6,
          str("100 LPs (%.0f optimal, %.0f infeasible, %.0f unbounded), ", counts[0], counts[1], counts[2]) +
              str("status mismatches %.0f, max objective error %.3g (tol 1e-6)", double(mismatches), worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"incircle example", incircle_example},
      {"grid-oracle equivalence", grid_equivalence},
      {"norm characterizations", norm_characterizations},
      {"Lipschitz invariant", lipschitz},
      {"worst-case multiplicity", worst_case_multiplicity},
      {"reduction soundness", reduction_soundness},
      {"relaxation removal", relaxation_removal},
      {"Caratheodory witness", caratheodory},
      {"portfolio cross-method agreement", portfolio_agreement},
      {"sweep monotonicity and endpoints", sweep_consistency},
      {"simplex kernel", simplex_kernel},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
