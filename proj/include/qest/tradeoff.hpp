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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qest/bounds.hpp"
#include "qest/geometry.hpp"
#include "qest/matcore.hpp"
#include "qest/models.hpp"

namespace qest {

/// Scalar bound as a function of the cost matrix.
using BoundFn = std::function<double(const RMatrix&)>;

struct CurvePoint {
  double t = 0.0;
  double nv1 = 0.0;
  double nv2 = 0.0;
};

/// Diagonal cost (s, t, 1 - s - t).
struct SimplexPoint {
  double s = 0.0;
  double t = 0.0;
  double r() const { return 1.0 - s - t; }
};

struct SurfacePoint {
  double s = 0.0;
  double t = 0.0;
  std::array<double, 3> nv{};
};

/// n points t_k = sin^2(pi (k + 1) / (2 (n + 1))), strictly inside (0, 1).
/// Denser near both ends, where the curves bend towards their asymptotes.
std::vector<double> angle_uniform_grid(int n);

/// n equally spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

/// NV1(t) = (u1 + sqrt((1-t)/t) sqrt(det)) / (d-1),
/// NV2(t) = (u2 + sqrt(t/(1-t)) sqrt(det)) / (d-1).
std::vector<CurvePoint> gm_curve_parametric(double u1, double u2, double det_hinv, int d,
                                            const std::vector<double>& t_grid);

/// Bound for an abstract two-parameter model with H^{-1} = [[u1, b], [b, u2]]
/// and, for the RLD kind, Im(R^{-1}) = [[0, a], [-a, 0]].
BoundFn two_param_bound(BoundKind kind, double u1, double u2, double b, double a, int d);

/// Bound of a model as a function of a K x K cost matrix.
BoundFn model_bound(BoundKind kind, const QfiBundle& bundle, int d,
                    const NumericPolicy& policy = default_policy());

/// Upper envelope of the lines t nv1 + (1-t) nv2 = bound(diag(t, 1-t)):
/// nv2(x) = max_t [bound - t x] / (1 - t). Each point records the maximizing t.
std::vector<CurvePoint> envelope_from_lines(const BoundFn& bound, const std::vector<double>& t_grid,
                                            const std::vector<double>& x_grid);

/// Points (i/n, j/n) with i + j <= n. With eps > 0 the simplex is shrunk so
/// every coordinate, including r, is at least eps.
std::vector<SimplexPoint> simplex_grid(int n, double eps = 0.0);

/// Bound values over a simplex grid, computed once and reused for every
/// (nv1, nv2) query.
struct BoundTable {
  std::vector<SimplexPoint> points;
  std::vector<double> values;
};

BoundTable tabulate_bound(const BoundFn& bound, const std::vector<SimplexPoint>& grid,
                          int threads = 1);

/// max over grid points with r > 0 of [bound - s nv1 - t nv2] / r.
double surface_min_nv3(const BoundTable& table, double nv1, double nv2);
double surface_min_nv3(const BoundFn& bound, double nv1, double nv2,
                       const std::vector<SimplexPoint>& grid);

/// Diagonal of the optimal covariance at every (s, t) of an eps-shrunk grid.
std::vector<SurfacePoint> gm_surface(const QfiBundle& bundle, const std::vector<SimplexPoint>& grid,
                                     int d, int threads = 1,
                                     const NumericPolicy& policy = default_policy());

// ---- state-independent relations -----------------------------------------

/// n diagonal costs drawn uniformly from the probability simplex.
std::vector<std::array<double, 3>> random_simplex_costs(int n, std::uint64_t seed);

struct StateIndepGrid {
  std::vector<double> z0;
  std::vector<double> alpha_deg;
  std::vector<double> beta_deg;
  std::vector<double> gamma_deg;
  std::vector<std::array<double, 3>> costs;

  std::size_t size() const {
    return z0.size() * alpha_deg.size() * beta_deg.size() * gamma_deg.size() * costs.size();
  }
};

std::vector<double> default_state_indep_z0();

/// Euler angles 0, step, ..., 360 degrees on every axis.
StateIndepGrid make_state_indep_grid(std::vector<double> z0, double step_deg, int n_costs,
                                     std::uint64_t seed);

struct StateIndepRow {
  double z0 = 0.0;
  std::array<double, 3> euler_deg{};
  std::array<double, 3> g{};
  std::array<double, 3> nv{};
};

struct StateIndepSummary {
  std::size_t points = 0;
  double min_pairwise_sum = 0.0;
  double min_total_sum = 0.0;
};

/// Diagonal of the optimal covariance for the qubit at z0 with H = R H_diag R^T
/// and diagonal cost g; fixed-size evaluation of optimal_covariance.
std::array<double, 3> state_indep_nv(double z0, const Mat3& rotation,
                                     const std::array<double, 3>& g, int d = 2);

struct StateIndepOptions {
  int threads = 1;
  int d = 2;
  // H depends on R only through R e_z, which R_z(gamma) leaves fixed, so one
  // evaluation per (z0, alpha, beta, cost) serves every gamma. false
  // recomputes each point from its own rotation.
  bool reuse_gamma = true;
};

/// Streams every grid point, in grid order (z0, alpha, beta, gamma, cost), to
/// `visitor` (which may be empty) and reduces the floor sums. The visit order
/// does not depend on the thread count.
StateIndepSummary state_indep_visit(const StateIndepGrid& grid,
                                    const std::function<void(const StateIndepRow&)>& visitor,
                                    const StateIndepOptions& options = {});

std::vector<StateIndepRow> state_indep_sample(const StateIndepGrid& grid,
                                              const StateIndepOptions& options = {});

/// g(c, u_z) = (f + |f|) / 2 + (1 - c)^2 (1 - u_z^2)^2 / 4 with
/// f = c^2 + c (1 - c)(1 - u_z^2) + u_z^2 (1 - c^2): the minimal pairwise cost
/// for a pure state after a rotation by angle acos(c) about an axis with
/// z-component u_z.
double two_param_objective(double c, double uz);

/// (Tr sqrt(P2 R P2 R^T P2))^2 / 4 with R from the Rodrigues formula.
double two_param_objective_direct(const Vec3& axis, double phi);

struct TwoParamMin {
  double value = 0.0;
  double c = 0.0;
  double uz = 0.0;
};

/// Grid search over [-1, 1]^2 followed by refine_iters rounds of 10x local
/// refinement around the incumbent.
TwoParamMin min_two_param_state_indep(int resolution = 401, int refine_iters = 5);

struct PlaneCheck {
  double analytic_max_deviation = 0.0;  // |value - 1| with H^{-1} = P2 / 4
  double numeric_max_deviation = 0.0;   // at z0 = numeric_z0
  double numeric_z0 = 0.0;
  bool monotone = false;                // value at z0 < 1 exceeds the pure value
};

/// (Tr sqrt(R H^{-1} R^T))^2 for pure states, over sampled rotations.
PlaneCheck three_param_plane_check(const std::vector<Mat3>& rotations,
                                   double numeric_z0 = 1.0 - 1e-8);

struct HolevoStateIndep {
  double min_value = 0.0;
  double argmin_z0 = 0.0;
};

/// Minimizes (3 - z0^2 + 2 z0) / 4 over the grid.
HolevoStateIndep holevo_state_indep(const std::vector<double>& z0_grid);

// ---- measurement comparison -------------------------------------------------

struct ComparisonPoint {
  std::string label;              // optimal, pauli or sld
  std::array<double, 3> weights{};  // cost (optimal) or mixture weights
  std::array<double, 3> nv{};
};

struct ComparisonConfig {
  double z0 = 0.92;
  std::array<double, 3> euler_deg{25.0, 25.0, 55.0};
  int n_costs = 400;
  int n_pauli = 400;
  int n_sld = 400;
  std::uint64_t seed = 42;
};

/// Optimal covariances over random diagonal costs, and inverse Fisher
/// diagonals of random mixtures of rotated Pauli and of SLD projective
/// measurements.
std::vector<ComparisonPoint> rotated_pauli_comparison(const ComparisonConfig& config,
                                                      const NumericPolicy& policy = default_policy());

}  // namespace qest
