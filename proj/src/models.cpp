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

#include "qest/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qest/error.hpp"

namespace qest {

namespace {

std::string describe(const char* what, double value, double limit) {
  std::ostringstream os;
  os << what << " " << value << " (limit " << limit << ")";
  return os.str();
}

// Transforms an operator into the eigenbasis of rho0 and back.
CMatrix to_eigenbasis(const StatisticalModel& model, const CMatrix& op) {
  const CMatrix& v = model.rho_eigen().vectors;
  return v.adjoint() * op * v;
}

CMatrix from_eigenbasis(const StatisticalModel& model, const CMatrix& op) {
  const CMatrix& v = model.rho_eigen().vectors;
  return v * op * v.adjoint();
}

// Real-linear least squares distance of `target` from span{basis}.
double distance_from_real_span(const std::vector<CMatrix>& basis, const CMatrix& target) {
  const Eigen::Index n = target.size();
  RMatrix a(2 * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto flat = basis[j].reshaped();
    a.col(static_cast<Eigen::Index>(j)) << flat.real(), flat.imag();
  }
  RVector b(2 * n);
  const auto flat = target.reshaped();
  b << flat.real(), flat.imag();
  const RVector coeffs = a.colPivHouseholderQr().solve(b);
  return (a * coeffs - b).norm();
}

}  // namespace

StatisticalModel StatisticalModel::create(CMatrix rho0, std::vector<CMatrix> derivs,
                                          std::vector<std::string> labels,
                                          const NumericPolicy& policy) {
  if (rho0.rows() == 0 || rho0.rows() != rho0.cols()) {
    raise(ErrorKind::InvalidSpec, "rho0 must be a non-empty square matrix");
  }
  if (derivs.empty()) raise(ErrorKind::InvalidSpec, "model needs at least one parameter");
  if (hermiticity_defect(rho0) > policy.hermitian_tol) {
    raise(ErrorKind::NotHermitian, describe("rho0 symmetry defect", hermiticity_defect(rho0),
                                            policy.hermitian_tol));
  }
  rho0 = hermitian_part(rho0);
  const double trace = rho0.trace().real();
  if (std::abs(trace - 1.0) > policy.trace_tol) {
    raise(ErrorKind::InvalidSpec, describe("Tr rho0 - 1 =", trace - 1.0, policy.trace_tol));
  }
  auto eigen = eig_herm(rho0, policy);
  const double min_eig = eigen.values.minCoeff();
  if (min_eig < policy.rank_tol) {
    raise(ErrorKind::RankDeficient, describe("rho0 minimum eigenvalue", min_eig, policy.rank_tol));
  }
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    auto& d = derivs[i];
    if (d.rows() != rho0.rows() || d.cols() != rho0.cols()) {
      raise(ErrorKind::InvalidSpec, "derivative " + std::to_string(i) + " has wrong dimension");
    }
    if (hermiticity_defect(d) > policy.trace_tol) {
      raise(ErrorKind::NotHermitian,
            describe(("derivative " + std::to_string(i) + " symmetry defect").c_str(),
                     hermiticity_defect(d), policy.trace_tol));
    }
    if (std::abs(d.trace()) > policy.trace_tol) {
      raise(ErrorKind::InvalidSpec,
            describe(("derivative " + std::to_string(i) + " trace").c_str(),
                     std::abs(d.trace()), policy.trace_tol));
    }
    d = hermitian_part(d);
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < derivs.size(); ++i) labels.push_back("theta" + std::to_string(i + 1));
  }
  if (labels.size() != derivs.size()) {
    raise(ErrorKind::InvalidSpec, "label count does not match parameter count");
  }

  StatisticalModel model;
  model.rho0_ = std::move(rho0);
  model.derivs_ = std::move(derivs);
  model.labels_ = std::move(labels);
  model.rho_eigen_ = std::move(eigen);
  return model;
}

CMatrix solve_sld_for(const StatisticalModel& model, const CMatrix& deriv) {
  const RVector& lambda = model.rho_eigen().values;
  CMatrix l = to_eigenbasis(model, deriv);
  for (Eigen::Index m = 0; m < l.rows(); ++m) {
    for (Eigen::Index n = 0; n < l.cols(); ++n) l(m, n) *= 2.0 / (lambda[m] + lambda[n]);
  }
  return hermitian_part(from_eigenbasis(model, l));
}

CMatrix solve_sld(const StatisticalModel& model, int i) {
  if (i < 0 || i >= model.num_params()) raise(ErrorKind::InvalidArgument, "solve_sld: bad index");
  return solve_sld_for(model, model.deriv(i));
}

CMatrix solve_rld(const StatisticalModel& model, int i) {
  if (i < 0 || i >= model.num_params()) raise(ErrorKind::InvalidArgument, "solve_rld: bad index");
  const auto& e = model.rho_eigen();
  const RVector inv = e.values.cwiseInverse();
  const CMatrix rho_inv = e.vectors * inv.asDiagonal() * e.vectors.adjoint();
  return rho_inv * model.deriv(i);
}

QfiBundle qfi_bundle(const StatisticalModel& model, const NumericPolicy& policy) {
  const int k = model.num_params();
  QfiBundle b;
  b.slds.reserve(static_cast<std::size_t>(k));
  b.rlds.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    b.slds.push_back(solve_sld(model, i));
    b.rlds.push_back(solve_rld(model, i));
  }

  const CMatrix& rho = model.rho0();
  b.H = RMatrix::Zero(k, k);
  b.D = RMatrix::Zero(k, k);
  b.R = CMatrix::Zero(k, k);
  const Complex imag(0.0, 1.0);
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (int j = 0; j < k; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const CMatrix li_lj = b.slds[ui] * b.slds[uj];
      const CMatrix lj_li = b.slds[uj] * b.slds[ui];
      b.H(i, j) = 0.5 * (rho * (li_lj + lj_li)).trace().real();
      b.D(i, j) = (imag * (rho * (li_lj - lj_li)).trace()).real();
      b.R(i, j) = (rho * b.rlds[uj] * b.rlds[ui].adjoint()).trace();
    }
  }
  b.H = hermitian_part(b.H);
  b.D = (b.D - b.D.transpose()) / 2.0;
  b.R = hermitian_part(b.R);

  try {
    b.Rinv = inv_psd(b.R, policy);
  } catch (const Error& e) {
    raise(ErrorKind::SingularRLD, std::string("RLD information matrix not invertible: ") + e.what());
  }
  try {
    b.Hinv = inv_psd(b.H, policy);
  } catch (const Error&) {
    b.Hinv.reset();
  }
  b.d_invariance = check_d_invariance(model, b.slds, policy);
  return b;
}

CMatrix rld_inverse_from_sld(const QfiBundle& bundle, const NumericPolicy& policy) {
  const RMatrix hinv = bundle.Hinv ? *bundle.Hinv : inv_psd(bundle.H, policy);
  const RMatrix im = hinv * bundle.D * hinv / 2.0;
  return hinv.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

DInvarianceReport check_d_invariance(const StatisticalModel& model,
                                     const std::vector<CMatrix>& slds,
                                     const NumericPolicy& policy) {
  const RVector& lambda = model.rho_eigen().values;
  const Complex two_i(0.0, 2.0);
  double worst = 0.0;
  for (const auto& l : slds) {
    // [X, rho]_mn = X_mn (lambda_n - lambda_m) in the eigenbasis of rho.
    CMatrix d = to_eigenbasis(model, l);
    for (Eigen::Index m = 0; m < d.rows(); ++m) {
      for (Eigen::Index n = 0; n < d.cols(); ++n) {
        d(m, n) *= two_i * (lambda[n] - lambda[m]) / (lambda[m] + lambda[n]);
      }
    }
    worst = std::max(worst, distance_from_real_span(slds, from_eigenbasis(model, d)));
  }
  return {worst < policy.d_invariance_tol, worst};
}

DInvarianceReport check_d_invariance(const StatisticalModel& model, const QfiBundle& bundle,
                                     const NumericPolicy& policy) {
  return check_d_invariance(model, bundle.slds, policy);
}

StatisticalModel qubit_model(double z0, const Mat3& rotation, const NumericPolicy& policy) {
  if (!(z0 >= 0.0) || z0 > 1.0 - policy.purity_guard) {
    raise(ErrorKind::PurityGuard,
          describe("z0 must lie in [0, 1 - purity_guard]; got", z0, 1.0 - policy.purity_guard));
  }
  if (!is_orthogonal(rotation)) raise(ErrorKind::InvalidArgument, "rotation is not orthogonal");
  const CMatrix rho0 = (CMatrix::Identity(2, 2) + z0 * pauli(2)) / 2.0;
  std::vector<CMatrix> derivs;
  for (int i = 0; i < 3; ++i) {
    CMatrix d = CMatrix::Zero(2, 2);
    for (int j = 0; j < 3; ++j) d += rotation(i, j) * pauli(j);
    derivs.push_back(std::move(d));
  }
  return StatisticalModel::create(rho0, std::move(derivs), {"x", "y", "z"}, policy);
}

StatisticalModel qutrit_model(double k1, double k2, const NumericPolicy& policy) {
  const double k3 = 1.0 - k1 - k2;
  const double ks[3] = {k1, k2, k3};
  for (double k : ks) {
    if (!(k >= policy.rank_tol)) {
      raise(ErrorKind::RankDeficient, describe("qutrit eigenvalue", k, policy.rank_tol));
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (std::abs(ks[a] - ks[b]) < policy.spectrum_gap) {
        raise(ErrorKind::DegenerateSpectrum,
              describe("qutrit eigenvalue gap", std::abs(ks[a] - ks[b]), policy.spectrum_gap));
      }
    }
  }
  CMatrix rho0 = CMatrix::Zero(3, 3);
  rho0.diagonal() << k1, k2, k3;
  const Complex minus_i(0.0, -1.0);
  std::vector<CMatrix> derivs;
  std::vector<std::string> labels;
  for (int index = 1; index <= 8; ++index) {
    const CMatrix lambda = gell_mann(index);
    if (index == 3 || index == 8) {
      derivs.push_back(lambda);
    } else {
      derivs.push_back(minus_i * (lambda * rho0 - rho0 * lambda));
    }
    labels.push_back("theta" + std::to_string(index));
  }
  return StatisticalModel::create(rho0, std::move(derivs), std::move(labels), policy);
}

}  // namespace qest
