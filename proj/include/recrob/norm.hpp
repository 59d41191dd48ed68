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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "recrob/error.hpp"
#include "recrob/linalg.hpp"

namespace recrob {

enum class NormKind { ExtremePoints, PolarExtremePoints, BuiltinL1, BuiltinL2, BuiltinLinf };

inline const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::ExtremePoints: return "extreme_points";
    case NormKind::PolarExtremePoints: return "polar_extreme_points";
    case NormKind::BuiltinL1: return "l1";
    case NormKind::BuiltinL2: return "l2";
    case NormKind::BuiltinLinf: return "linf";
  }
  return "?";
}

/// A norm whose unit ball is a polytope, given by the extreme points of the
/// ball or of its polar, or one of the builtin l1 / l2 / linf norms.
///
/// With `gauge` set the symmetry requirement is dropped and the object
/// describes a polyhedral gauge; distances are then measured from x towards
/// y as gauge(y - x).
class BlockNorm {
 public:
  static BlockNorm l1() { return BlockNorm(NormKind::BuiltinL1); }
  static BlockNorm l2() { return BlockNorm(NormKind::BuiltinL2); }
  static BlockNorm linf() { return BlockNorm(NormKind::BuiltinLinf); }

  static BlockNorm from_extreme_points(std::vector<Vector> gens, bool gauge = false) {
    return BlockNorm(NormKind::ExtremePoints, std::move(gens), gauge);
  }
  static BlockNorm from_polar_extreme_points(std::vector<Vector> gens, bool gauge = false) {
    return BlockNorm(NormKind::PolarExtremePoints, std::move(gens), gauge);
  }

  NormKind kind() const noexcept { return kind_; }
  bool gauge() const noexcept { return gauge_; }
  bool builtin() const noexcept {
    return kind_ == NormKind::BuiltinL1 || kind_ == NormKind::BuiltinL2 ||
           kind_ == NormKind::BuiltinLinf;
  }
  /// Generators for the explicit kinds; empty for builtins.
  const std::vector<Vector>& generators() const noexcept { return gens_; }

  /// Dimension the generators live in; 0 for builtins (any dimension).
  std::size_t dimension() const noexcept { return gens_.empty() ? 0 : gens_.front().size(); }

  void check_dimension(std::size_t n) const {
    if (!builtin())
      require(dimension() == n, Errc::DimensionMismatch,
              "norm generators have dimension " + std::to_string(dimension()) +
                  ", expected " + std::to_string(n));
  }

  friend bool operator==(const BlockNorm&, const BlockNorm&) = default;

 private:
  explicit BlockNorm(NormKind kind) : kind_(kind) {}

  BlockNorm(NormKind kind, std::vector<Vector> gens, bool gauge)
      : kind_(kind), gens_(std::move(gens)), gauge_(gauge) {
    require(!gens_.empty(), Errc::InvalidNorm, "block norm needs at least one generator");
    const std::size_t n = gens_.front().size();
    require(n > 0, Errc::InvalidNorm, "zero-dimensional generators");
    for (const auto& g : gens_) {
      require(g.size() == n, Errc::DimensionMismatch, "generators of differing dimension");
      require(all_finite(g), Errc::NonFiniteData, "non-finite generator entry");
    }
    if (!gauge_) {
      for (const auto& g : gens_) {
        bool mirrored = false;
        for (const auto& h : gens_) {
          bool match = true;
          for (std::size_t j = 0; j < n && match; ++j) match = std::abs(g[j] + h[j]) <= 1e-12;
          if (match) {
            mirrored = true;
            break;
          }
        }
        require(mirrored, Errc::InvalidNorm,
                "generator set is not symmetric (use gauge mode for asymmetric balls)");
      }
    }
    require(rank(Matrix::from_rows(gens_, n)) == n, Errc::InvalidNorm,
            "generators do not span the space");
  }

  NormKind kind_;
  std::vector<Vector> gens_;
  bool gauge_ = false;
};

namespace detail {

inline std::vector<Vector> signed_unit_vectors(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    out.push_back(e);
    e[j] = -1.0;
    out.push_back(e);
  }
  return out;
}

inline std::vector<Vector> sign_vectors(std::size_t n) {
  require(n <= 20, Errc::InvalidArgument, "2^n sign vectors requested for n > 20");
  std::vector<Vector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Ext(B) in R^n, hard-coded for the l1 / linf builtins.
inline std::vector<Vector> primal_generators(const BlockNorm& norm, std::size_t n) {
  switch (norm.kind()) {
    case NormKind::ExtremePoints: norm.check_dimension(n); return norm.generators();
    case NormKind::BuiltinL1: return detail::signed_unit_vectors(n);
    case NormKind::BuiltinLinf: return detail::sign_vectors(n);
    default:
      throw Error(Errc::UnsupportedNorm,
                  std::string("no unit-ball extreme points for norm kind ") +
                      norm_kind_name(norm.kind()));
  }
}

/// Ext(B°) in R^n, hard-coded for the l1 / linf builtins.
inline std::vector<Vector> polar_generators(const BlockNorm& norm, std::size_t n) {
  switch (norm.kind()) {
    case NormKind::PolarExtremePoints: norm.check_dimension(n); return norm.generators();
    case NormKind::BuiltinL1: return detail::sign_vectors(n);
    case NormKind::BuiltinLinf: return detail::signed_unit_vectors(n);
    default:
      throw Error(Errc::UnsupportedNorm,
                  std::string("no polar extreme points for norm kind ") +
                      norm_kind_name(norm.kind()));
  }
}

}  // namespace recrob
