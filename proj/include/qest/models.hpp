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

#include <optional>
#include <string>
#include <vector>

#include "qest/geometry.hpp"
#include "qest/matcore.hpp"

namespace qest {

/// A full-rank density matrix together with its parameter derivatives at the
/// reference point. Instances are validated on construction and immutable.
class StatisticalModel {
 public:
  /// Validates Tr rho0 = 1, rho0 >= rank_tol * I, Hermitian traceless
  /// derivatives of matching dimension. Missing labels become theta1..thetaK.
  static StatisticalModel create(CMatrix rho0, std::vector<CMatrix> derivs,
                                 std::vector<std::string> labels = {},
                                 const NumericPolicy& policy = default_policy());

  const CMatrix& rho0() const { return rho0_; }
  const std::vector<CMatrix>& derivs() const { return derivs_; }
  const CMatrix& deriv(int i) const { return derivs_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  const CEigenDecomp& rho_eigen() const { return rho_eigen_; }

  int dim() const { return static_cast<int>(rho0_.rows()); }
  int num_params() const { return static_cast<int>(derivs_.size()); }

 private:
  StatisticalModel() = default;

  CMatrix rho0_;
  std::vector<CMatrix> derivs_;
  std::vector<std::string> labels_;
  CEigenDecomp rho_eigen_;
};

struct DInvarianceReport {
  bool invariant = false;
  double residual = 0.0;  // max Frobenius distance of D(L_i) from span{L_j}
};

/// Logarithmic derivatives and the information matrices built from them.
struct QfiBundle {
  std::vector<CMatrix> slds;
  std::vector<CMatrix> rlds;
  RMatrix H;                    // SLD quantum Fisher information
  CMatrix R;                    // RLD quantum Fisher information
  CMatrix Rinv;
  RMatrix D;                    // D_ij = i Tr rho [L_i, L_j]
  std::optional<RMatrix> Hinv;  // empty when H is singular
  DInvarianceReport d_invariance;

  int num_params() const { return static_cast<int>(H.rows()); }
};

/// SLD L solving (L rho + rho L) / 2 = deriv, in the eigenbasis of rho:
/// L_mn = 2 deriv_mn / (lambda_m + lambda_n).
CMatrix solve_sld(const StatisticalModel& model, int i);
CMatrix solve_sld_for(const StatisticalModel& model, const CMatrix& deriv);

/// RLD rho^{-1} deriv_i.
CMatrix solve_rld(const StatisticalModel& model, int i);

QfiBundle qfi_bundle(const StatisticalModel& model,
                     const NumericPolicy& policy = default_policy());

/// H^{-1} + (i/2) H^{-1} D H^{-1}; equals Rinv for D-invariant models.
CMatrix rld_inverse_from_sld(const QfiBundle& bundle,
                             const NumericPolicy& policy = default_policy());

/// Solves D(X) rho + rho D(X) = 2i [X, rho] for each SLD and measures the
/// distance of D(L_i) from the real span of all SLDs.
DInvarianceReport check_d_invariance(const StatisticalModel& model,
                                     const std::vector<CMatrix>& slds,
                                     const NumericPolicy& policy = default_policy());
DInvarianceReport check_d_invariance(const StatisticalModel& model, const QfiBundle& bundle,
                                     const NumericPolicy& policy = default_policy());

/// Qubit at rho0 = (I + z0 sigma_z) / 2 with derivatives sum_j R_ij sigma_j.
StatisticalModel qubit_model(double z0, const Mat3& rotation = Mat3::Identity(),
                             const NumericPolicy& policy = default_policy());

/// Eight-parameter qutrit model around diag(k1, k2, 1 - k1 - k2). Parameter i
/// (0-based) belongs to Gell-Mann matrix lambda_{i+1}; off-diagonal directions
/// have derivative -i[lambda, rho0], the diagonal ones (lambda_3, lambda_8)
/// have derivative lambda.
StatisticalModel qutrit_model(double k1, double k2,
                              const NumericPolicy& policy = default_policy());

}  // namespace qest
