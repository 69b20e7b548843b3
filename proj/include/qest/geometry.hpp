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

#include <array>

#include <Eigen/Dense>

#include "qest/matcore.hpp"

namespace qest {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pauli matrix sigma_{axis+1}, axis in {0,1,2}.
CMatrix pauli(int axis);

/// Gell-Mann matrix lambda_index, index in 1..8. lambda_8 carries 1/sqrt(3).
CMatrix gell_mann(int index);

/// Right-handed rotations about the coordinate axes; angles in radians.
Mat3 rotation_x(double angle);
Mat3 rotation_y(double angle);
Mat3 rotation_z(double angle);

/// R = R_x(alpha) R_y(beta) R_z(gamma).
Mat3 euler_rotation(double alpha, double beta, double gamma);
Mat3 euler_rotation_deg(const std::array<double, 3>& degrees);

/// Rodrigues formula for a rotation by phi about the unit axis u.
Mat3 rodrigues_rotation(const Vec3& axis, double phi);

/// True when R^T R = I within tol.
bool is_orthogonal(const Mat3& r, double tol = 1e-9);

/// Coefficients c_j = Tr(X sigma_j) / 2 of a 2x2 operator in the Pauli basis.
Vec3 bloch_coefficients(const CMatrix& op);

/// Bloch vector n_j = Tr(rho sigma_j) of a qubit state.
Vec3 bloch_vector(const CMatrix& rho);

/// (w I + v.sigma) / 2; with w = 1 and |v| = 1 this is a rank-1 projector.
CMatrix bloch_operator(const Vec3& v, double identity_weight = 1.0);

}  // namespace qest
