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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qest/bounds.hpp"
#include "qest/mc.hpp"
#include "qest/measurements.hpp"
#include "qest/models.hpp"

namespace qest {

// JSON documents. Complex entries are [re, im] pairs; plain numbers are real.
// Malformed documents raise InvalidSpec.

/// {"type":"qubit","z0":0.7,"euler_deg":[25,25,55]}
/// {"type":"qutrit","k":[0.5,0.3]}
/// {"type":"generic","rho0":[[...]],"derivs":[[[...]]],"labels":[...]}
StatisticalModel model_from_json(const std::string& text,
                                 const NumericPolicy& policy = default_policy());

/// {"elements":[matrix, ...]} or a bare list of matrices.
Povm povm_from_json(const std::string& text, const NumericPolicy& policy = default_policy());
std::string povm_to_json(const Povm& povm);

/// Simulation document:
/// {"model":{...}, "cost":[g1,g2,g3] or matrix,
///  "measurement":"optimal" | {"povm":...} | {"mixture":{"weights":[...],"parts":[povm,...]}},
///  "n_copies":100000, "n_trials":500, "seed":42}
struct SimSetup {
  SimConfig config;
  CostMatrix cost;
  std::string measurement_kind;  // optimal, povm or mixture
};

SimSetup sim_setup_from_json(const std::string& text, std::optional<std::uint64_t> seed_override,
                             int threads, const NumericPolicy& policy = default_policy());

std::string read_text_file(const std::string& path);

}  // namespace qest
