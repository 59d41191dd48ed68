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

// Dense two-phase primal simplex. Instances in this library are small
// (scenario count times dimension), so the tableau is kept dense and no
// factorization is maintained between iterations.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/linalg.hpp"

namespace recrob::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Le, Eq, Ge };

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense;
  double rhs;
};

/// min objective^T x subject to constraints and per-variable bounds.
/// Bounds may be infinite; free variables use (-kInf, kInf).
struct LinearProgram {
  Vector objective;
  Vector lower;
  Vector upper;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const noexcept { return objective.size(); }

  std::size_t add_variable(double cost, double lo = 0.0, double hi = kInf) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return objective.size() - 1;
  }

  void add_constraint(std::vector<Term> terms, Sense sense, double rhs) {
    constraints.push_back({std::move(terms), sense, rhs});
  }

  void add_dense_constraint(std::span<const double> row, Sense sense, double rhs,
                            std::size_t offset = 0) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0.0) terms.push_back({offset + j, row[j]});
    add_constraint(std::move(terms), sense, rhs);
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "?";
}

struct Outcome {
  Status status = Status::Infeasible;
  Vector point;
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

struct Options {
  double pivot_tol = 1e-10;
  double zero_tol = 1e-12;
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-7;
  // 0 selects the default 10 * (rows + cols)^2.
  std::size_t iteration_limit = 0;
};

namespace detail {

// Standard form: min c^T s, A s = b, s >= 0, b >= 0.
struct StandardForm {
  std::size_t rows = 0;
  std::size_t structural = 0;  // columns mapped from original variables
  Matrix a;                    // rows x (structural + slacks)
  Vector b;
  Vector c;
  std::vector<int> initial_basis;  // slack column per row, or -1
  // x_j = offset_j + sum over (col, sign)
  std::vector<double> offset;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_of;
};

inline void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  require(lp.lower.size() == n && lp.upper.size() == n, Errc::DimensionMismatch,
          "variable bound vectors do not match objective length");
  require(all_finite(lp.objective), Errc::NonFiniteData, "non-finite objective coefficient");
  for (std::size_t j = 0; j < n; ++j) {
    require(!std::isnan(lp.lower[j]) && !std::isnan(lp.upper[j]), Errc::NonFiniteData,
            "NaN variable bound");
    require(lp.lower[j] != kInf && lp.upper[j] != -kInf, Errc::InvalidArgument,
            "variable bound on the wrong side of infinity");
  }
  for (const auto& con : lp.constraints) {
    require(std::isfinite(con.rhs), Errc::NonFiniteData, "non-finite constraint rhs");
    for (const auto& t : con.terms) {
      require(t.var < n, Errc::DimensionMismatch, "constraint references unknown variable");
      require(std::isfinite(t.coef), Errc::NonFiniteData, "non-finite constraint coefficient");
    }
  }
}

inline StandardForm standardize(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t n = lp.num_vars();
  sf.offset.assign(n, 0.0);
  sf.columns_of.resize(n);

  struct Row {
    std::vector<std::pair<std::size_t, double>> terms;
    Sense sense;
    double rhs;
  };
  std::vector<Row> rows;
  std::size_t col = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (col, span)
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      sf.offset[j] = lo;
      sf.columns_of[j].push_back({col, 1.0});
      if (std::isfinite(hi)) upper_rows.push_back({col, hi - lo});
      ++col;
    } else if (std::isfinite(hi)) {
      sf.offset[j] = hi;
      sf.columns_of[j].push_back({col++, -1.0});
    } else {
      sf.columns_of[j].push_back({col++, 1.0});
      sf.columns_of[j].push_back({col++, -1.0});
    }
  }
  sf.structural = col;

  for (const auto& con : lp.constraints) {
    Row r{{}, con.sense, con.rhs};
    for (const auto& t : con.terms) {
      r.rhs -= t.coef * sf.offset[t.var];
      for (const auto& [c, sign] : sf.columns_of[t.var]) r.terms.push_back({c, sign * t.coef});
    }
    rows.push_back(std::move(r));
  }
  for (const auto& [c, span] : upper_rows) rows.push_back({{{c, 1.0}}, Sense::Le, span});

  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.rhs = -r.rhs;
      for (auto& t : r.terms) t.second = -t.second;
      if (r.sense == Sense::Le)
        r.sense = Sense::Ge;
      else if (r.sense == Sense::Ge)
        r.sense = Sense::Le;
    }
  }

  std::size_t slacks = 0;
  for (const auto& r : rows)
    if (r.sense != Sense::Eq) ++slacks;

  sf.rows = rows.size();
  sf.a = Matrix(sf.rows, sf.structural + slacks);
  sf.b.resize(sf.rows);
  sf.initial_basis.assign(sf.rows, -1);
  std::size_t slack = sf.structural;
  for (std::size_t i = 0; i < sf.rows; ++i) {
    for (const auto& [c, v] : rows[i].terms) sf.a(i, c) += v;
    sf.b[i] = rows[i].rhs;
    if (rows[i].sense == Sense::Le) {
      sf.a(i, slack) = 1.0;
      sf.initial_basis[i] = static_cast<int>(slack);
      ++slack;
    } else if (rows[i].sense == Sense::Ge) {
      sf.a(i, slack) = -1.0;
      ++slack;
    }
  }

  sf.c.assign(sf.a.cols(), 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [c, sign] : sf.columns_of[j]) sf.c[c] += sign * lp.objective[j];
  return sf;
}

// Solves the square system m x = rhs with partial pivoting; false if singular.
inline bool solve_dense(Matrix m, Vector rhs, Vector& x) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
    if (std::abs(m(piv, c)) < 1e-13) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = m(i, c) / m(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      rhs[i] -= f * rhs[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
    x[ii] = s / m(ii, ii);
  }
  return true;
}

// Feasibility relaxation of the Harris ratio test.
inline constexpr double kHarrisSlack = 1e-9;

class Tableau {
 public:
  Tableau(const StandardForm& sf, const Options& opt)
      : opt_(opt), m_(sf.rows), real_cols_(sf.a.cols()) {
    std::size_t artificials = 0;
    for (int b : sf.initial_basis)
      if (b < 0) ++artificials;
    cols_ = real_cols_ + artificials;
    width_ = cols_ + 1;
    t_.assign((m_ + 1) * width_, 0.0);
    basis_.assign(m_, 0);
    active_.assign(m_, true);
    std::size_t art = real_cols_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < real_cols_; ++j) at(i, j) = sf.a(i, j);
      at(i, cols_) = sf.b[i];
      if (sf.initial_basis[i] >= 0) {
        basis_[i] = static_cast<std::size_t>(sf.initial_basis[i]);
      } else {
        at(i, art) = 1.0;
        basis_[i] = art++;
      }
    }
    const std::size_t dim = m_ + cols_;
    limit_ = opt.iteration_limit ? opt.iteration_limit : 10 * dim * dim;
  }

  std::size_t iterations() const noexcept { return iterations_; }
  std::size_t rows() const noexcept { return m_; }
  bool active(std::size_t i) const { return active_[i]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  double rhs(std::size_t i) const { return at(i, cols_); }

  // Phase 1. Returns the minimal sum of artificial values.
  double phase_one() {
    if (cols_ == real_cols_) return 0.0;
    Vector cost(cols_, 0.0);
    for (std::size_t j = real_cols_; j < cols_; ++j) cost[j] = 1.0;
    load_cost(cost);
    const bool bounded = iterate(cols_);
    require(bounded, Errc::NumericalBreakdown, "phase-1 objective reported unbounded");
    return -at(m_, cols_);
  }

  // Pivots remaining artificials out of the basis; rows where that is
  // impossible are linearly dependent and get deactivated.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < real_cols_) continue;
      std::size_t best = cols_;
      double mag = opt_.pivot_tol;
      for (std::size_t j = 0; j < real_cols_; ++j) {
        if (std::abs(at(i, j)) > mag) {
          mag = std::abs(at(i, j));
          best = j;
        }
      }
      if (best < cols_)
        pivot(i, best);
      else
        active_[i] = false;
    }
  }

  // Phase 2 over real columns. Returns false when unbounded.
  bool phase_two(const Vector& cost) {
    Vector full(cols_, 0.0);
    std::copy(cost.begin(), cost.end(), full.begin());
    load_cost(full);
    return iterate(real_cols_);
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  void load_cost(const Vector& cost) {
    cost_ = cost;
    for (std::size_t j = 0; j < width_; ++j) at(m_, j) = j < cols_ ? cost[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const double p = at(r, e);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, e) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || (i < m_ && !active_[i])) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, e) = 0.0;
    }
    basis_[r] = e;
  }

  // Leaving row for entering column e, or m_ when none is admissible.
  // `blocked` reports tiny positive entries that were rejected as pivots.
  // Outside Bland mode this is Harris' two-pass test: rows whose ratio is
  // within a small relaxation of the minimum compete, and the largest pivot
  // element wins.
  std::size_t ratio_test(std::size_t e, bool bland, bool& blocked) const {
    std::size_t leave = m_;
    double best = kInf;
    blocked = false;
    double relaxed = kInf;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double a = at(i, e);
      if (a <= opt_.pivot_tol) {
        if (a > opt_.zero_tol) blocked = true;
        continue;
      }
      relaxed = std::min(relaxed, (std::max(at(i, cols_), 0.0) + kHarrisSlack) / a);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double a = at(i, e);
      if (a <= opt_.pivot_tol) continue;
      const double ratio = std::max(at(i, cols_), 0.0) / a;
      if (bland) {
        if (leave == m_ || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[i] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      } else if (ratio <= relaxed && (leave == m_ || a > at(leave, e))) {
        leave = i;
      }
    }
    return leave;
  }

  bool iterate(std::size_t eligible) {
    const std::size_t degenerate_switch = 2 * (m_ + cols_);
    std::size_t degenerate_run = 0;
    std::vector<char> excluded(eligible, 0);
    bool refreshed = false;
    for (;;) {
      const bool bland = degenerate_run >= degenerate_switch;
      std::size_t enter = eligible;
      double most = -opt_.optimality_tol;
      for (std::size_t j = 0; j < eligible; ++j) {
        if (excluded[j]) continue;
        const double d = at(m_, j);
        if (d < most) {
          enter = j;
          most = d;
          if (bland) break;
        }
      }
      if (enter == eligible) {
        for (std::size_t j = 0; j < eligible; ++j) {
          if (excluded[j])
            throw Error(Errc::NumericalBreakdown,
                        "entering candidates only admit pivots below tolerance");
        }
        return true;
      }
      bool blocked = false;
      const std::size_t leave = ratio_test(enter, bland, blocked);
      if (leave == m_) {
        // Recompute the reduced costs from the current rows once before
        // trusting an unbounded ray; the cost row drifts over many pivots.
        if (!blocked && !refreshed) {
          load_cost(cost_);
          refreshed = true;
          continue;
        }
        if (!blocked) return false;
        excluded[enter] = 1;
        continue;
      }
      refreshed = false;
      std::fill(excluded.begin(), excluded.end(), 0);
      require(++iterations_ <= limit_, Errc::IterationLimit,
              "simplex exceeded " + std::to_string(limit_) + " pivots");
      const double step = std::max(at(leave, cols_), 0.0) / at(leave, enter);
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
  }

  Options opt_;
  std::size_t m_;
  std::size_t real_cols_;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  Vector cost_;
  std::size_t iterations_ = 0;
  std::size_t limit_ = 0;
};

inline Vector recover_standard(const StandardForm& sf, const Tableau& tab) {
  Vector s(sf.a.cols(), 0.0);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.active(i)) rows.push_back(i);
  for (std::size_t i : rows) s[tab.basic(i)] = std::max(tab.rhs(i), 0.0);

  // Refine the basic solution from the original data: the tableau
  // accumulates rounding over many pivots.
  const std::size_t k = rows.size();
  Matrix basis(k, k);
  Vector rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    rhs[r] = sf.b[rows[r]];
    for (std::size_t c = 0; c < k; ++c) basis(r, c) = sf.a(rows[r], tab.basic(rows[c]));
  }
  Vector xb;
  if (solve_dense(std::move(basis), std::move(rhs), xb)) {
    for (std::size_t c = 0; c < k; ++c) s[tab.basic(rows[c])] = std::max(xb[c], 0.0);
  }
  return s;
}

inline double violation(const LinearProgram& lp, const Vector& x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper[j]);
  }
  for (const auto& con : lp.constraints) {
    double lhs = 0.0;
    double scale = 1.0 + std::abs(con.rhs);
    for (const auto& t : con.terms) {
      lhs += t.coef * x[t.var];
      scale = std::max(scale, std::abs(t.coef * x[t.var]));
    }
    double v = 0.0;
    if (con.sense == Sense::Le) v = lhs - con.rhs;
    if (con.sense == Sense::Ge) v = con.rhs - lhs;
    if (con.sense == Sense::Eq) v = std::abs(lhs - con.rhs);
    worst = std::max(worst, v / scale);
  }
  return worst;
}

}  // namespace detail

/// Two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after 2 * (rows + cols) consecutive degenerate pivots. Deterministic.
inline Outcome solve(const LinearProgram& lp, const Options& opt = {}) {
  detail::validate(lp);
  const detail::StandardForm sf = detail::standardize(lp);
  detail::Tableau tab(sf, opt);

  Outcome out;
  const double infeasibility = tab.phase_one();
  if (infeasibility > opt.feasibility_tol) {
    out.status = Status::Infeasible;
    out.iterations = tab.iterations();
    return out;
  }
  tab.expel_artificials();
  const bool bounded = tab.phase_two(sf.c);
  out.iterations = tab.iterations();
  if (!bounded) {
    out.status = Status::Unbounded;
    return out;
  }

  const Vector s = detail::recover_standard(sf, tab);
  out.point.assign(lp.num_vars(), 0.0);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    double v = sf.offset[j];
    for (const auto& [c, sign] : sf.columns_of[j]) v += sign * s[c];
    out.point[j] = v;
  }
  out.status = Status::Optimal;
  out.objective_value = dot(lp.objective, out.point);
  const double viol = detail::violation(lp, out.point);
  require(viol <= opt.feasibility_tol, Errc::NumericalBreakdown,
          "returned point violates constraints by " + std::to_string(viol));
  return out;
}

}  // namespace recrob::lp
