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

#include <stdexcept>
#include <string>
#include <string_view>

namespace recrob {

enum class Errc {
  DimensionMismatch,
  TooFewScenarios,
  NonFiniteData,
  InfiniteValue,
  InfiniteRadius,
  UnsupportedNorm,
  InvalidNorm,
  InfeasibleDecomposition,
  ZeroNormal,
  NumericalBreakdown,
  IterationLimit,
  InfeasibleEps,
  InfeasibleDelta,
  UnboundedObjective,
  UnboundedScenario,
  UnboundedEndpoint,
  StructureViolation,
  BudgetExhausted,
  InfeasibleBound,
  NoConvergence,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooFewScenarios: return "TooFewScenarios";
    case Errc::NonFiniteData: return "NonFiniteData";
    case Errc::InfiniteValue: return "InfiniteValue";
    case Errc::InfiniteRadius: return "InfiniteRadius";
    case Errc::UnsupportedNorm: return "UnsupportedNorm";
    case Errc::InvalidNorm: return "InvalidNorm";
    case Errc::InfeasibleDecomposition: return "InfeasibleDecomposition";
    case Errc::ZeroNormal: return "ZeroNormal";
    case Errc::NumericalBreakdown: return "NumericalBreakdown";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::InfeasibleEps: return "InfeasibleEps";
    case Errc::InfeasibleDelta: return "InfeasibleDelta";
    case Errc::UnboundedObjective: return "UnboundedObjective";
    case Errc::UnboundedScenario: return "UnboundedScenario";
    case Errc::UnboundedEndpoint: return "UnboundedEndpoint";
    case Errc::StructureViolation: return "StructureViolation";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::InfeasibleBound: return "InfeasibleBound";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// All failures raised by the library carry one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace recrob
