// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qest/error.hpp"

namespace qest {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SingularRLD: return "SingularRLD";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::PurityGuard: return "PurityGuard";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::BadPovm: return "BadPovm";
    case ErrorKind::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorKind::NotSaturating: return "NotSaturating";
    case ErrorKind::NotDInvariant: return "NotDInvariant";
    case ErrorKind::SingularCost: return "SingularCost";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::SingularFisher: return "SingularFisher";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotUnit:
    case ErrorKind::BadWeights:
    case ErrorKind::BadPovm:
    case ErrorKind::BadGrid:
    case ErrorKind::EmptyGrid:
    case ErrorKind::PurityGuard:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidSpec:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qest
