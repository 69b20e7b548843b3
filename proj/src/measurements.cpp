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

#include "qest/measurements.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qest/error.hpp"

namespace qest {

namespace {

Mat3 derivative_coefficients(const StatisticalModel& model) {
  if (model.dim() != 2 || model.num_params() != 3) {
    raise(ErrorKind::InvalidArgument, "expected a three-parameter qubit model");
  }
  Mat3 a;
  for (int i = 0; i < 3; ++i) a.row(i) = bloch_coefficients(model.deriv(i)).transpose();
  return a;
}

// First component with magnitude above tol is made positive.
void fix_sign(RVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

const RMatrix& require_hinv(const QfiBundle& bundle) {
  if (!bundle.Hinv) raise(ErrorKind::Singular, "SLD quantum Fisher information is singular");
  return *bundle.Hinv;
}

}  // namespace

Povm Povm::create(std::vector<CMatrix> elements, const NumericPolicy& policy) {
  if (elements.empty()) raise(ErrorKind::BadPovm, "POVM has no elements");
  const Eigen::Index d = elements.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    auto& m = elements[k];
    if (m.rows() != d || m.cols() != d) {
      raise(ErrorKind::BadPovm, "POVM element " + std::to_string(k) + " has wrong dimension");
    }
    if (hermiticity_defect(m) > policy.hermitian_tol) {
      raise(ErrorKind::BadPovm, "POVM element " + std::to_string(k) + " is not Hermitian");
    }
    m = hermitian_part(m);
    const double lo = eig_herm(m, policy).values.minCoeff();
    if (lo < -policy.psd_clamp) {
      std::ostringstream os;
      os << "POVM element " << k << " has eigenvalue " << lo;
      raise(ErrorKind::BadPovm, os.str());
    }
    total += m;
  }
  const double defect = max_abs(CMatrix(total - CMatrix::Identity(d, d)));
  if (defect > policy.povm_tol) {
    std::ostringstream os;
    os << "POVM elements sum to identity only within " << defect;
    raise(ErrorKind::BadPovm, os.str());
  }
  Povm povm;
  povm.elements_ = std::move(elements);
  return povm;
}

RVector Povm::probabilities(const CMatrix& rho) const {
  RVector p(size());
  for (int k = 0; k < size(); ++k) p[k] = (element(k) * rho).trace().real();
  return p;
}

MixtureSpec MixtureSpec::create(std::vector<double> weights, std::vector<Povm> parts,
                                const NumericPolicy& policy) {
  if (weights.empty() || weights.size() != parts.size()) {
    raise(ErrorKind::BadWeights, "mixture needs one weight per part");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) raise(ErrorKind::BadWeights, "mixture weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > policy.weight_tol) {
    std::ostringstream os;
    os << "mixture weights sum to " << sum;
    raise(ErrorKind::BadWeights, os.str());
  }
  for (const auto& p : parts) {
    if (p.dim() != parts.front().dim()) raise(ErrorKind::BadWeights, "parts differ in dimension");
  }
  MixtureSpec spec;
  spec.weights_ = std::move(weights);
  spec.parts_ = std::move(parts);
  return spec;
}

MixtureSpec MixtureSpec::single(Povm povm) {
  MixtureSpec spec;
  spec.weights_ = {1.0};
  spec.parts_.push_back(std::move(povm));
  return spec;
}

Povm projective_bloch(const Vec3& v, const NumericPolicy& policy) {
  if (std::abs(v.norm() - 1.0) > policy.unit_tol) {
    std::ostringstream os;
    os << "Bloch direction has norm " << v.norm();
    raise(ErrorKind::NotUnit, os.str());
  }
  return Povm::create({bloch_operator(v), bloch_operator(-v)}, policy);
}

Povm mix(const MixtureSpec& spec, const NumericPolicy& policy) {
  std::vector<CMatrix> elements;
  for (int k = 0; k < spec.num_parts(); ++k) {
    const double w = spec.weights()[static_cast<std::size_t>(k)];
    for (const auto& m : spec.parts()[static_cast<std::size_t>(k)].elements()) {
      elements.push_back(w * m);
    }
  }
  return Povm::create(std::move(elements), policy);
}

RMatrix fisher_info(const StatisticalModel& model, const Povm& povm, const NumericPolicy& policy) {
  if (povm.dim() != model.dim()) {
    raise(ErrorKind::InvalidArgument, "POVM and model dimensions differ");
  }
  const int k_params = model.num_params();
  RMatrix f = RMatrix::Zero(k_params, k_params);
  RVector numer(k_params);
  for (int k = 0; k < povm.size(); ++k) {
    const CMatrix& m = povm.element(k);
    const double p = (m * model.rho0()).trace().real();
    for (int i = 0; i < k_params; ++i) numer[i] = (m * model.deriv(i)).trace().real();
    if (p < policy.prob_floor) {
      if (numer.cwiseAbs().maxCoeff() > policy.numerator_tol) {
        std::ostringstream os;
        os << "outcome " << k << " has probability " << p << " but nonzero derivative";
        raise(ErrorKind::ZeroProbabilityOutcome, os.str());
      }
      continue;
    }
    f.noalias() += numer * numer.transpose() / p;
  }
  return hermitian_part(f);
}

double gm_trace(const StatisticalModel& model, const QfiBundle& bundle, const Povm& povm,
                const NumericPolicy& policy) {
  return (fisher_info(model, povm, policy) * require_hinv(bundle)).trace();
}

double gm_trace(const StatisticalModel& model, const Povm& povm, const NumericPolicy& policy) {
  return gm_trace(model, qfi_bundle(model, policy), povm, policy);
}

std::vector<GmComponent> gm_measurement_components(const StatisticalModel& model,
                                                   const RMatrix& target_f,
                                                   const NumericPolicy& policy) {
  const Mat3 a = derivative_coefficients(model);
  if (target_f.rows() != 3 || target_f.cols() != 3) {
    raise(ErrorKind::InvalidArgument, "target Fisher information must be 3x3");
  }
  Eigen::FullPivLU<Mat3> lu(a);
  if (!lu.isInvertible()) raise(ErrorKind::Singular, "model derivatives are linearly dependent");
  const Mat3 a_inv = lu.inverse();
  const Vec3 n = bloch_vector(model.rho0());

  const auto e = eig_herm(target_f, policy);
  if (e.values.minCoeff() < -policy.psd_error) {
    raise(ErrorKind::NotPSD, "target Fisher information is not positive semidefinite");
  }
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  std::vector<GmComponent> out;
  for (Eigen::Index k = 0; k < 3; ++k) {
    const double f = e.values[k];
    if (f <= 1e-12 * scale) continue;
    RVector w = e.vectors.col(k);
    fix_sign(w);
    const Vec3 u = a_inv * Vec3(w);
    const Vec3 v = u / u.norm();
    const double nv = n.dot(v);
    out.push_back({v, f * u.squaredNorm() * (1.0 - nv * nv) / 4.0, f});
  }
  return out;
}

MixtureSpec construct_gm_measurement(const StatisticalModel& model, const RMatrix& target_f,
                                     const NumericPolicy& policy) {
  const QfiBundle bundle = qfi_bundle(model, policy);
  const double trace = (target_f * require_hinv(bundle)).trace();
  if (std::abs(trace - 1.0) > policy.saturation_tol) {
    std::ostringstream os;
    os << "Tr(F H^-1) = " << trace << " is not saturating";
    raise(ErrorKind::NotSaturating, os.str());
  }
  const auto components = gm_measurement_components(model, target_f, policy);
  double total = 0.0;
  for (const auto& c : components) total += c.weight;
  std::vector<double> weights;
  std::vector<Povm> parts;
  for (const auto& c : components) {
    weights.push_back(c.weight / total);
    parts.push_back(projective_bloch(c.direction, policy));
  }
  return MixtureSpec::create(std::move(weights), std::move(parts), policy);
}

std::vector<Povm> sld_measurements(const StatisticalModel& model, const QfiBundle& bundle,
                                   const NumericPolicy& policy) {
  if (model.dim() != 2) raise(ErrorKind::InvalidArgument, "SLD measurements need a qubit model");
  std::vector<Povm> out;
  for (const auto& l : bundle.slds) {
    const auto e = eig_herm(l, policy);
    if (e.values[1] - e.values[0] < 1e-12) {
      raise(ErrorKind::InvalidArgument, "SLD has a degenerate spectrum");
    }
    const Eigen::VectorXcd top = e.vectors.col(1);
    const CMatrix proj = top * top.adjoint();
    const Vec3 b = bloch_vector(proj);
    out.push_back(projective_bloch(b / b.norm(), policy));
  }
  return out;
}

std::vector<Povm> pauli_measurements(const StatisticalModel& model, const NumericPolicy& policy) {
  const Mat3 a = derivative_coefficients(model);
  std::vector<Povm> out;
  for (int i = 0; i < 3; ++i) {
    const Vec3 v = a.row(i).transpose();
    out.push_back(projective_bloch(v / v.norm(), policy));
  }
  return out;
}

}  // namespace qest
