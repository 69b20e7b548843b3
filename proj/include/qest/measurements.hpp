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

#include <vector>

#include "qest/geometry.hpp"
#include "qest/matcore.hpp"
#include "qest/models.hpp"

namespace qest {

/// Finite POVM: positive semidefinite elements summing to the identity.
class Povm {
 public:
  static Povm create(std::vector<CMatrix> elements,
                     const NumericPolicy& policy = default_policy());

  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& element(int k) const { return elements_.at(static_cast<std::size_t>(k)); }
  int size() const { return static_cast<int>(elements_.size()); }
  int dim() const { return elements_.empty() ? 0 : static_cast<int>(elements_.front().rows()); }

  /// Outcome probabilities Tr(M_k rho).
  RVector probabilities(const CMatrix& rho) const;

 private:
  Povm() = default;
  std::vector<CMatrix> elements_;
};

/// Probabilistic mixture: part k is measured on a fraction weights[k] of the
/// copies.
class MixtureSpec {
 public:
  static MixtureSpec create(std::vector<double> weights, std::vector<Povm> parts,
                            const NumericPolicy& policy = default_policy());
  static MixtureSpec single(Povm povm);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Povm>& parts() const { return parts_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }

 private:
  MixtureSpec() = default;
  std::vector<double> weights_;
  std::vector<Povm> parts_;
};

/// Two-outcome projective measurement {(I + v.sigma)/2, (I - v.sigma)/2}.
Povm projective_bloch(const Vec3& v, const NumericPolicy& policy = default_policy());

/// Concatenates weight_k * M^(k)_j over all parts, in part order.
Povm mix(const MixtureSpec& spec, const NumericPolicy& policy = default_policy());

/// Classical Fisher information sum_k Tr(M_k d_i) Tr(M_k d_j) / Tr(M_k rho0).
/// Outcomes with zero probability and zero numerators contribute nothing.
RMatrix fisher_info(const StatisticalModel& model, const Povm& povm,
                    const NumericPolicy& policy = default_policy());

/// Tr(F^M H^{-1}); at most d - 1 for any single-copy measurement.
double gm_trace(const StatisticalModel& model, const Povm& povm,
                const NumericPolicy& policy = default_policy());
double gm_trace(const StatisticalModel& model, const QfiBundle& bundle, const Povm& povm,
                const NumericPolicy& policy = default_policy());

/// Bloch direction and weight of one projective component of a GM measurement.
struct GmComponent {
  Vec3 direction;
  double weight = 0.0;
  double fisher_eigenvalue = 0.0;
};

/// Mixture of projective qubit measurements whose Fisher information equals
/// target_f. Requires a three-parameter qubit model and a saturating target,
/// Tr(target_f H^{-1}) = 1.
MixtureSpec construct_gm_measurement(const StatisticalModel& model, const RMatrix& target_f,
                                     const NumericPolicy& policy = default_policy());

/// Components behind construct_gm_measurement, before normalization.
std::vector<GmComponent> gm_measurement_components(const StatisticalModel& model,
                                                   const RMatrix& target_f,
                                                   const NumericPolicy& policy = default_policy());

/// Projective measurements in the eigenbasis of each SLD of a qubit model.
std::vector<Povm> sld_measurements(const StatisticalModel& model, const QfiBundle& bundle,
                                   const NumericPolicy& policy = default_policy());

/// Projective measurements along the Bloch directions of each derivative
/// (the Pauli measurements of the model's coordinate frame).
std::vector<Povm> pauli_measurements(const StatisticalModel& model,
                                     const NumericPolicy& policy = default_policy());

}  // namespace qest
