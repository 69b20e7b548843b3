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

#include "qest/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qest/error.hpp"

namespace qest {

const NumericPolicy& default_policy() {
  static const NumericPolicy policy{};
  return policy;
}

namespace {

template <typename MatrixType>
double hermiticity_defect_impl(const MatrixType& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename MatrixType>
void require_hermitian(const MatrixType& m, const NumericPolicy& policy, const char* where) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    raise(ErrorKind::NotHermitian, std::string(where) + ": matrix must be square and non-empty");
  }
  const double defect = hermiticity_defect_impl(m);
  if (!(defect <= policy.hermitian_tol)) {
    std::ostringstream os;
    os << where << ": symmetry defect " << defect << " exceeds " << policy.hermitian_tol;
    raise(ErrorKind::NotHermitian, os.str());
  }
}

template <typename MatrixType>
EigenDecomp<MatrixType> eig_impl(const MatrixType& m, const NumericPolicy& policy,
                                 const char* where) {
  require_hermitian(m, policy, where);
  const MatrixType sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixType> solver(sym);
  if (solver.info() != Eigen::Success) {
    raise(ErrorKind::NotHermitian, std::string(where) + ": eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Applies fn to the spectrum of a Hermitian matrix.
template <typename MatrixType, typename Fn>
MatrixType spectral_map(const EigenDecomp<MatrixType>& e, Fn fn) {
  RVector mapped = e.values;
  for (Eigen::Index k = 0; k < mapped.size(); ++k) mapped[k] = fn(e.values[k]);
  MatrixType out = e.vectors * mapped.asDiagonal() * e.vectors.adjoint();
  return (out + out.adjoint()) / 2.0;
}

void require_psd_spectrum(const RVector& values, const NumericPolicy& policy, const char* where) {
  const double lo = values.minCoeff();
  if (lo < -policy.psd_error) {
    std::ostringstream os;
    os << where << ": minimum eigenvalue " << lo << " below " << -policy.psd_error;
    raise(ErrorKind::NotPSD, os.str());
  }
}

template <typename MatrixType>
MatrixType sqrt_impl(const MatrixType& m, const NumericPolicy& policy) {
  const auto e = eig_impl(m, policy, "sqrt_psd");
  require_psd_spectrum(e.values, policy, "sqrt_psd");
  return spectral_map(e, [](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; });
}

template <typename MatrixType>
MatrixType abs_impl(const MatrixType& m, const NumericPolicy& policy) {
  const auto e = eig_impl(m, policy, "abs_herm");
  return spectral_map(e, [](double v) { return std::abs(v); });
}

template <typename MatrixType>
MatrixType inv_impl(const MatrixType& m, const NumericPolicy& policy) {
  const auto e = eig_impl(m, policy, "inv_psd");
  const double lo = e.values.minCoeff();
  if (!(lo > policy.singular_tol)) {
    std::ostringstream os;
    os << "inv_psd: minimum eigenvalue " << lo << " not above " << policy.singular_tol;
    raise(ErrorKind::Singular, os.str());
  }
  return spectral_map(e, [](double v) { return 1.0 / v; });
}

}  // namespace

template <typename MatrixType>
MatrixType EigenDecomp<MatrixType>::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.adjoint();
}

template struct EigenDecomp<CMatrix>;
template struct EigenDecomp<RMatrix>;

double hermiticity_defect(const CMatrix& m) { return hermiticity_defect_impl(m); }
double hermiticity_defect(const RMatrix& m) { return hermiticity_defect_impl(m); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CEigenDecomp eig_herm(const CMatrix& m, const NumericPolicy& policy) {
  return eig_impl(m, policy, "eig_herm");
}
REigenDecomp eig_herm(const RMatrix& m, const NumericPolicy& policy) {
  return eig_impl(m, policy, "eig_herm");
}

CMatrix sqrt_psd(const CMatrix& m, const NumericPolicy& policy) { return sqrt_impl(m, policy); }
RMatrix sqrt_psd(const RMatrix& m, const NumericPolicy& policy) { return sqrt_impl(m, policy); }

CMatrix abs_herm(const CMatrix& m, const NumericPolicy& policy) { return abs_impl(m, policy); }
RMatrix abs_herm(const RMatrix& m, const NumericPolicy& policy) { return abs_impl(m, policy); }

CMatrix inv_psd(const CMatrix& m, const NumericPolicy& policy) { return inv_impl(m, policy); }
RMatrix inv_psd(const RMatrix& m, const NumericPolicy& policy) { return inv_impl(m, policy); }

double fidelity_trace_sq(const RMatrix& a, const RMatrix& b, const NumericPolicy& policy) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(ErrorKind::InvalidArgument, "fidelity_trace_sq: dimension mismatch");
  }
  require_psd_spectrum(eig_impl(b, policy, "fidelity_trace_sq").values, policy,
                       "fidelity_trace_sq");
  const RMatrix root_a = sqrt_psd(a, policy);
  const RMatrix inner = hermitian_part(RMatrix(root_a * b * root_a));
  const auto e = eig_impl(inner, policy, "fidelity_trace_sq");
  require_psd_spectrum(e.values, policy, "fidelity_trace_sq");
  double trace = 0.0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (e.values[k] > 0.0) trace += std::sqrt(e.values[k]);
  }
  return trace * trace;
}

double fidelity_trace_sq_2x2(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    raise(ErrorKind::InvalidArgument, "fidelity_trace_sq_2x2: inputs must be 2x2");
  }
  const double det_a = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double det_b = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const double trace_ab = (a * b).trace();
  return trace_ab + 2.0 * std::sqrt(std::max(0.0, det_a * det_b));
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }
RMatrix hermitian_part(const RMatrix& m) { return (m + m.transpose()) / 2.0; }

}  // namespace qest
