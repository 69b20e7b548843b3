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

#include <complex>

#include <Eigen/Dense>

namespace qest {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Absolute tolerances shared by every module. Defaults are the library-wide
/// values; callers may pass a modified copy to any operation that takes one.
struct NumericPolicy {
  double hermitian_tol = 1e-9;     // symmetry defect above which input is rejected
  double psd_clamp = 1e-10;        // eigenvalues in [-psd_clamp, 0) are set to 0
  double psd_error = 1e-8;         // eigenvalues below -psd_error are an error
  double singular_tol = 1e-12;     // inverse requires min eigenvalue above this
  double rank_tol = 1e-9;          // full-rank threshold for density matrices
  double trace_tol = 1e-10;        // Tr rho = 1, traceless derivatives
  double purity_guard = 1e-6;      // qubit z0 <= 1 - purity_guard
  double spectrum_gap = 1e-6;      // qutrit eigenvalues pairwise separation
  double povm_tol = 1e-9;          // sum of POVM elements equals identity
  double unit_tol = 1e-9;          // Bloch vectors have unit norm
  double weight_tol = 1e-10;       // mixture weights lie on the simplex
  double prob_floor = 1e-12;       // outcome probability treated as zero
  double numerator_tol = 1e-10;    // derivative numerator treated as zero
  double saturation_tol = 1e-6;    // Tr(F H^-1) = 1 for GM measurements
  double d_invariance_tol = 1e-8;  // projection residual for D-invariance
};

const NumericPolicy& default_policy();

/// Spectral decomposition with ascending eigenvalues and orthonormal columns.
template <typename MatrixType>
struct EigenDecomp {
  RVector values;
  MatrixType vectors;

  MatrixType reconstruct() const;
};

using CEigenDecomp = EigenDecomp<CMatrix>;
using REigenDecomp = EigenDecomp<RMatrix>;

double hermiticity_defect(const CMatrix& m);
double hermiticity_defect(const RMatrix& m);

/// Largest absolute entry.
double max_abs(const CMatrix& m);
double max_abs(const RMatrix& m);

CEigenDecomp eig_herm(const CMatrix& m, const NumericPolicy& policy = default_policy());
REigenDecomp eig_herm(const RMatrix& m, const NumericPolicy& policy = default_policy());

/// Principal square root of a positive semidefinite matrix. Slightly negative
/// eigenvalues (rounding noise) are clamped to zero; anything below
/// -policy.psd_error throws NotPSD.
CMatrix sqrt_psd(const CMatrix& m, const NumericPolicy& policy = default_policy());
RMatrix sqrt_psd(const RMatrix& m, const NumericPolicy& policy = default_policy());

/// |m| = sum_k |lambda_k| v_k v_k^dagger.
CMatrix abs_herm(const CMatrix& m, const NumericPolicy& policy = default_policy());
RMatrix abs_herm(const RMatrix& m, const NumericPolicy& policy = default_policy());

/// Inverse of a positive definite matrix through its eigendecomposition.
CMatrix inv_psd(const CMatrix& m, const NumericPolicy& policy = default_policy());
RMatrix inv_psd(const RMatrix& m, const NumericPolicy& policy = default_policy());

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2 for positive semidefinite a, b.
double fidelity_trace_sq(const RMatrix& a, const RMatrix& b,
                         const NumericPolicy& policy = default_policy());

/// Closed form Tr(ab) + 2 sqrt(det(ab)) for 2x2 inputs. The determinant is
/// taken from the entries directly.
double fidelity_trace_sq_2x2(const RMatrix& a, const RMatrix& b);

/// Symmetrized copy, (m + m^dagger) / 2.
CMatrix hermitian_part(const CMatrix& m);
RMatrix hermitian_part(const RMatrix& m);

}  // namespace qest
