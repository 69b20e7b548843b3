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

#include "qest/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qest/error.hpp"

namespace qest {

CMatrix pauli(int axis) {
  const Complex i(0.0, 1.0);
  CMatrix m = CMatrix::Zero(2, 2);
  switch (axis) {
    case 0: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 1: m(0, 1) = -i; m(1, 0) = i; break;
    case 2: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: raise(ErrorKind::InvalidArgument, "pauli: axis must be 0, 1 or 2");
  }
  return m;
}

CMatrix gell_mann(int index) {
  const Complex i(0.0, 1.0);
  CMatrix m = CMatrix::Zero(3, 3);
  switch (index) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = 1.0; m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -i; m(2, 0) = i; break;
    case 6: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -i; m(2, 1) = i; break;
    case 8: {
      const double s = 1.0 / std::sqrt(3.0);
      m(0, 0) = s; m(1, 1) = s; m(2, 2) = -2.0 * s;
      break;
    }
    default: raise(ErrorKind::InvalidArgument, "gell_mann: index must be in 1..8");
  }
  return m;
}

Mat3 rotation_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rotation_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Mat3 rotation_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

Mat3 euler_rotation(double alpha, double beta, double gamma) {
  return rotation_x(alpha) * rotation_y(beta) * rotation_z(gamma);
}

Mat3 euler_rotation_deg(const std::array<double, 3>& degrees) {
  constexpr double k = std::numbers::pi / 180.0;
  return euler_rotation(degrees[0] * k, degrees[1] * k, degrees[2] * k);
}

Mat3 rodrigues_rotation(const Vec3& axis, double phi) {
  const double norm = axis.norm();
  if (!(norm > 0.0)) raise(ErrorKind::InvalidArgument, "rodrigues_rotation: zero axis");
  const Vec3 u = axis / norm;
  const double c = std::cos(phi), s = std::sin(phi), t = 1.0 - c;
  Mat3 r;
  r << c + u.x() * u.x() * t, u.x() * u.y() * t - u.z() * s, u.x() * u.z() * t + u.y() * s,
       u.x() * u.y() * t + u.z() * s, c + u.y() * u.y() * t, u.y() * u.z() * t - u.x() * s,
       u.x() * u.z() * t - u.y() * s, u.y() * u.z() * t + u.x() * s, c + u.z() * u.z() * t;
  return r;
}

bool is_orthogonal(const Mat3& r, double tol) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Vec3 bloch_coefficients(const CMatrix& op) {
  if (op.rows() != 2 || op.cols() != 2) {
    raise(ErrorKind::InvalidArgument, "bloch_coefficients: operator must be 2x2");
  }
  Vec3 c;
  for (int j = 0; j < 3; ++j) c[j] = 0.5 * (op * pauli(j)).trace().real();
  return c;
}

Vec3 bloch_vector(const CMatrix& rho) { return 2.0 * bloch_coefficients(rho); }

CMatrix bloch_operator(const Vec3& v, double identity_weight) {
  CMatrix m = identity_weight * CMatrix::Identity(2, 2);
  for (int j = 0; j < 3; ++j) m += v[j] * pauli(j);
  return m / 2.0;
}

}  // namespace qest
