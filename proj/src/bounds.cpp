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

#include "qest/bounds.hpp"

#include <cmath>
#include <sstream>

#include "qest/error.hpp"

namespace qest {

namespace {

const RMatrix& require_hinv(const QfiBundle& bundle) {
  if (!bundle.Hinv) raise(ErrorKind::Singular, "SLD quantum Fisher information is singular");
  return *bundle.Hinv;
}

void require_same_dim(const QfiBundle& bundle, const CostMatrix& g) {
  if (g.dim() != bundle.num_params()) {
    std::ostringstream os;
    os << "cost matrix is " << g.dim() << "x" << g.dim() << " but the model has "
       << bundle.num_params() << " parameters";
    raise(ErrorKind::InvalidArgument, os.str());
  }
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Sld: return "sld";
    case BoundKind::GillMassar: return "gm";
    case BoundKind::RldHolevo: return "rld";
  }
  return "unknown";
}

CostMatrix CostMatrix::create(RMatrix g, const NumericPolicy& policy) {
  if (g.rows() == 0 || g.rows() != g.cols()) {
    raise(ErrorKind::InvalidArgument, "cost matrix must be square and non-empty");
  }
  if (hermiticity_defect(g) > policy.hermitian_tol) {
    raise(ErrorKind::NotHermitian, "cost matrix is not symmetric");
  }
  g = hermitian_part(g);
  const double lo = eig_herm(g, policy).values.minCoeff();
  if (lo < -policy.psd_clamp) {
    std::ostringstream os;
    os << "cost matrix has eigenvalue " << lo;
    raise(ErrorKind::NotPSD, os.str());
  }
  CostMatrix c;
  c.g_ = std::move(g);
  c.min_eig_ = lo;
  return c;
}

CostMatrix CostMatrix::diagonal(const std::vector<double>& weights, const NumericPolicy& policy) {
  RVector w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights[i];
  return create(RMatrix(w.asDiagonal()), policy);
}

BoundValue sld_bound(const QfiBundle& bundle, const CostMatrix& g) {
  require_same_dim(bundle, g);
  return {BoundKind::Sld, (require_hinv(bundle) * g.matrix()).trace()};
}

BoundValue gm_bound(const QfiBundle& bundle, const CostMatrix& g, int d,
                    const NumericPolicy& policy) {
  if (d < 2) raise(ErrorKind::InvalidArgument, "Hilbert dimension must be at least 2");
  require_same_dim(bundle, g);
  const double f = fidelity_trace_sq(g.matrix(), require_hinv(bundle), policy);
  return {BoundKind::GillMassar, f / (d - 1)};
}

BoundValue rld_holevo_bound(const QfiBundle& bundle, const CostMatrix& g,
                            const NumericPolicy& policy) {
  if (!bundle.d_invariance.invariant) {
    std::ostringstream os;
    os << "model is not D-invariant (residual " << bundle.d_invariance.residual << ")";
    raise(ErrorKind::NotDInvariant, os.str());
  }
  require_same_dim(bundle, g);
  const RMatrix& hinv = require_hinv(bundle);
  const RMatrix root = sqrt_psd(g.matrix(), policy);
  // Real antisymmetric; multiplying by i gives the Hermitian operand of |.|.
  const RMatrix a = root * hinv * bundle.D * hinv * root;
  const CMatrix herm = Complex(0.0, 1.0) * a.cast<Complex>();
  const double im_part = abs_herm(hermitian_part(herm), policy).trace().real();
  return {BoundKind::RldHolevo, (g.matrix() * hinv).trace() + 0.5 * im_part};
}

BoundValue bound_value(BoundKind kind, const QfiBundle& bundle, const CostMatrix& g, int d,
                       const NumericPolicy& policy) {
  switch (kind) {
    case BoundKind::Sld: return sld_bound(bundle, g);
    case BoundKind::GillMassar: return gm_bound(bundle, g, d, policy);
    case BoundKind::RldHolevo: return rld_holevo_bound(bundle, g, policy);
  }
  raise(ErrorKind::InvalidArgument, "unknown bound kind");
}

RMatrix optimal_covariance(const QfiBundle& bundle, const CostMatrix& g, int d,
                           const NumericPolicy& policy) {
  if (d < 2) raise(ErrorKind::InvalidArgument, "Hilbert dimension must be at least 2");
  require_same_dim(bundle, g);
  const auto e = eig_herm(g.matrix(), policy);
  if (e.values.minCoeff() < 1e-10) {
    std::ostringstream os;
    os << "cost matrix minimum eigenvalue " << e.values.minCoeff() << " is below 1e-10";
    raise(ErrorKind::SingularCost, os.str());
  }
  const RVector root = e.values.cwiseSqrt();
  const RMatrix g_half = e.vectors * root.asDiagonal() * e.vectors.transpose();
  const RMatrix g_mhalf = e.vectors * root.cwiseInverse().asDiagonal() * e.vectors.transpose();
  const RMatrix m = sqrt_psd(RMatrix(g_half * require_hinv(bundle) * g_half), policy);
  const RMatrix nv = m.trace() / (d - 1) * g_mhalf * m * g_mhalf;
  return hermitian_part(nv);
}

}  // namespace qest
