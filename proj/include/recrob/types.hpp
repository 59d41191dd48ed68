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

#include <cstddef>
#include <string>
#include <vector>

#include "recrob/linalg.hpp"

namespace recrob {

/// One realization (A, b, c) of the uncertain data: constraints A y <= b,
/// cost c^T y.
struct Scenario {
  std::string id;
  Matrix a_matrix;
  Vector rhs;
  Vector cost;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// {x : D x <= e}. Zero rows means the whole space.
struct Polyhedron {
  Matrix d_matrix;
  Vector e_vector;

  static Polyhedron whole_space(std::size_t n) { return {Matrix(0, n), {}}; }

  std::size_t dimension() const noexcept { return d_matrix.cols(); }
  bool is_whole_space() const noexcept { return d_matrix.rows() == 0; }

  friend bool operator==(const Polyhedron&, const Polyhedron&) = default;
};

/// Finite uncertainty set over a deterministic domain X.
struct UncertainProblem {
  std::size_t n = 0;
  std::vector<Scenario> scenarios;
  Polyhedron x_domain;
  bool rhs_only = false;

  std::size_t num_scenarios() const noexcept { return scenarios.size(); }

  friend bool operator==(const UncertainProblem&, const UncertainProblem&) = default;
};

/// First-stage point with one recovery per scenario.
struct RecoverableSolution {
  Vector x;
  std::vector<Vector> recoveries;
  ExtReal radius;
  double worst_objective = 0.0;
};

}  // namespace recrob
