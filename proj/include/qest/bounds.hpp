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

#include <string_view>
#include <vector>

#include "qest/matcore.hpp"
#include "qest/models.hpp"

namespace qest {

/// Positive semidefinite real weight matrix over the parameters.
class CostMatrix {
 public:
  static CostMatrix create(RMatrix g, const NumericPolicy& policy = default_policy());
  static CostMatrix diagonal(const std::vector<double>& weights,
                             const NumericPolicy& policy = default_policy());

  const RMatrix& matrix() const { return g_; }
  int dim() const { return static_cast<int>(g_.rows()); }
  double min_eigenvalue() const { return min_eig_; }

 private:
  CostMatrix() = default;
  RMatrix g_;
  double min_eig_ = 0.0;
};

enum class BoundKind { Sld, GillMassar, RldHolevo };

std::string_view to_string(BoundKind kind);

/// Rescaled (per-copy) lower bound on Tr(N V G).
struct BoundValue {
  BoundKind kind = BoundKind::Sld;
  double value = 0.0;
};

/// Tr(H^{-1} G).
BoundValue sld_bound(const QfiBundle& bundle, const CostMatrix& g);

/// (Tr sqrt(sqrt(G) H^{-1} sqrt(G)))^2 / (d - 1).
BoundValue gm_bound(const QfiBundle& bundle, const CostMatrix& g, int d,
                    const NumericPolicy& policy = default_policy());

/// Tr(G H^{-1}) + Tr|i sqrt(G) H^{-1} D H^{-1} sqrt(G)| / 2; only for
/// D-invariant models, where it equals the Holevo bound.
BoundValue rld_holevo_bound(const QfiBundle& bundle, const CostMatrix& g,
                            const NumericPolicy& policy = default_policy());

BoundValue bound_value(BoundKind kind, const QfiBundle& bundle, const CostMatrix& g, int d,
                       const NumericPolicy& policy = default_policy());

/// Rescaled covariance attaining the GM bound for cost g. Requires g > 0.
RMatrix optimal_covariance(const QfiBundle& bundle, const CostMatrix& g, int d,
                           const NumericPolicy& policy = default_policy());

}  // namespace qest
