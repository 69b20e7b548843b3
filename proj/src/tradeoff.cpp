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

#include "qest/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "qest/error.hpp"
#include "qest/measurements.hpp"
#include "qest/parallel.hpp"

namespace qest {

namespace {

void require_open_unit(const std::vector<double>& t_grid) {
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) {
      std::ostringstream os;
      os << "grid value " << t << " is outside (0, 1)";
      raise(ErrorKind::BadGrid, os.str());
    }
  }
}

RMatrix diag2(double a, double b) {
  RMatrix g = RMatrix::Zero(2, 2);
  g(0, 0) = a;
  g(1, 1) = b;
  return g;
}

RMatrix diag3(double a, double b, double c) {
  RMatrix g = RMatrix::Zero(3, 3);
  g(0, 0) = a;
  g(1, 1) = b;
  g(2, 2) = std::max(0.0, c);
  return g;
}

// Uniform on the 2-simplex: normalized exponential draws.
std::array<double, 3> draw_simplex(std::mt19937_64& rng) {
  std::array<double, 3> e{};
  double sum = 0.0;
  for (auto& x : e) {
    x = std::max(-std::log1p(-unit_uniform(rng())), 1e-9);
    sum += x;
  }
  for (auto& x : e) x /= sum;
  return e;
}

}  // namespace

std::vector<double> angle_uniform_grid(int n) {
  if (n < 1) raise(ErrorKind::EmptyGrid, "grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phi = std::numbers::pi * (k + 1) / (2.0 * (n + 1));
    const double s = std::sin(phi);
    grid[static_cast<std::size_t>(k)] = s * s;
  }
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) raise(ErrorKind::EmptyGrid, "grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return grid;
}

std::vector<CurvePoint> gm_curve_parametric(double u1, double u2, double det_hinv, int d,
                                            const std::vector<double>& t_grid) {
  if (!(u1 > 0.0 && u2 > 0.0 && det_hinv > 0.0)) {
    raise(ErrorKind::InvalidArgument, "u1, u2 and det(H^-1) must be positive");
  }
  if (d < 2) raise(ErrorKind::InvalidArgument, "Hilbert dimension must be at least 2");
  require_open_unit(t_grid);
  const double root_det = std::sqrt(det_hinv);
  std::vector<CurvePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    out.push_back({t, (u1 + std::sqrt((1.0 - t) / t) * root_det) / (d - 1),
                   (u2 + std::sqrt(t / (1.0 - t)) * root_det) / (d - 1)});
  }
  return out;
}

BoundFn two_param_bound(BoundKind kind, double u1, double u2, double b, double a, int d) {
  RMatrix hinv(2, 2);
  hinv << u1, b, b, u2;
  if (eig_herm(hinv).values.minCoeff() <= 0.0) {
    raise(ErrorKind::InvalidArgument, "[[u1, b], [b, u2]] must be positive definite");
  }
  if (d < 2) raise(ErrorKind::InvalidArgument, "Hilbert dimension must be at least 2");
  switch (kind) {
    case BoundKind::Sld:
      return [hinv](const RMatrix& g) { return (g * hinv).trace(); };
    case BoundKind::GillMassar:
      return [hinv, d](const RMatrix& g) { return fidelity_trace_sq(g, hinv) / (d - 1); };
    case BoundKind::RldHolevo: {
      RMatrix im(2, 2);
      im << 0.0, a, -a, 0.0;
      return [hinv, im](const RMatrix& g) {
        const RMatrix root = sqrt_psd(g);
        const CMatrix op = Complex(0.0, 1.0) * RMatrix(root * im * root).cast<Complex>();
        return (g * hinv).trace() + abs_herm(hermitian_part(op)).trace().real();
      };
    }
  }
  raise(ErrorKind::InvalidArgument, "unknown bound kind");
}

BoundFn model_bound(BoundKind kind, const QfiBundle& bundle, int d, const NumericPolicy& policy) {
  auto shared = std::make_shared<const QfiBundle>(bundle);
  return [kind, shared, d, policy](const RMatrix& g) {
    return bound_value(kind, *shared, CostMatrix::create(g, policy), d, policy).value;
  };
}

std::vector<CurvePoint> envelope_from_lines(const BoundFn& bound, const std::vector<double>& t_grid,
                                            const std::vector<double>& x_grid) {
  if (t_grid.empty() || x_grid.empty()) raise(ErrorKind::EmptyGrid, "envelope needs t and x grids");
  require_open_unit(t_grid);
  std::vector<double> values(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    values[k] = bound(diag2(t_grid[k], 1.0 - t_grid[k]));
  }
  std::vector<CurvePoint> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    CurvePoint best{t_grid[0], x, -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double t = t_grid[k];
      const double y = (values[k] - t * x) / (1.0 - t);
      if (y > best.nv2) best = {t, x, y};
    }
    out.push_back(best);
  }
  return out;
}

std::vector<SimplexPoint> simplex_grid(int n, double eps) {
  if (n < 1) raise(ErrorKind::BadGrid, "simplex grid needs n >= 1");
  if (!(eps >= 0.0 && eps < 1.0 / 3.0)) raise(ErrorKind::BadGrid, "eps must lie in [0, 1/3)");
  std::vector<SimplexPoint> out;
  out.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  const double shrink = 1.0 - 3.0 * eps;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      const double s = static_cast<double>(i) / n;
      const double t = static_cast<double>(j) / n;
      out.push_back({eps + shrink * s, eps + shrink * t});
    }
  }
  return out;
}

BoundTable tabulate_bound(const BoundFn& bound, const std::vector<SimplexPoint>& grid,
                          int threads) {
  if (grid.empty()) raise(ErrorKind::EmptyGrid, "empty simplex grid");
  BoundTable table;
  table.points = grid;
  table.values.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const auto& p = grid[k];
    table.values[k] = bound(diag3(p.s, p.t, p.r()));
  });
  return table;
}

double surface_min_nv3(const BoundTable& table, double nv1, double nv2) {
  if (table.points.empty()) raise(ErrorKind::EmptyGrid, "empty bound table");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.points.size(); ++k) {
    const auto& p = table.points[k];
    const double r = p.r();
    if (r <= 1e-12) continue;
    best = std::max(best, (table.values[k] - p.s * nv1 - p.t * nv2) / r);
  }
  if (!(best > 0.0)) {
    std::ostringstream os;
    os << "no positive NV3 at (" << nv1 << ", " << nv2 << ")";
    raise(ErrorKind::Infeasible, os.str());
  }
  return best;
}

double surface_min_nv3(const BoundFn& bound, double nv1, double nv2,
                       const std::vector<SimplexPoint>& grid) {
  return surface_min_nv3(tabulate_bound(bound, grid), nv1, nv2);
}

std::vector<SurfacePoint> gm_surface(const QfiBundle& bundle, const std::vector<SimplexPoint>& grid,
                                     int d, int threads, const NumericPolicy& policy) {
  if (bundle.num_params() != 3) raise(ErrorKind::InvalidArgument, "surface needs three parameters");
  if (grid.empty()) raise(ErrorKind::EmptyGrid, "empty simplex grid");
  std::vector<SurfacePoint> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const auto& p = grid[k];
    const RMatrix nv =
        optimal_covariance(bundle, CostMatrix::create(diag3(p.s, p.t, p.r()), policy), d, policy);
    out[k] = {p.s, p.t, {nv(0, 0), nv(1, 1), nv(2, 2)}};
  });
  return out;
}

std::vector<std::array<double, 3>> random_simplex_costs(int n, std::uint64_t seed) {
  if (n < 1) raise(ErrorKind::EmptyGrid, "need at least one cost sample");
  std::mt19937_64 rng(substream_seed(seed, 0));
  std::vector<std::array<double, 3>> out(static_cast<std::size_t>(n));
  for (auto& g : out) g = draw_simplex(rng);
  return out;
}

std::vector<double> default_state_indep_z0() {
  return {0.5, 0.9, 0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-6};
}

StateIndepGrid make_state_indep_grid(std::vector<double> z0, double step_deg, int n_costs,
                                     std::uint64_t seed) {
  if (!(step_deg > 0.0 && step_deg <= 360.0)) raise(ErrorKind::BadGrid, "Euler step must be in (0, 360]");
  const int steps = static_cast<int>(std::floor(360.0 / step_deg + 1e-9));
  StateIndepGrid grid;
  grid.z0 = std::move(z0);
  for (int k = 0; k <= steps; ++k) grid.alpha_deg.push_back(k * step_deg);
  grid.beta_deg = grid.alpha_deg;
  grid.gamma_deg = grid.alpha_deg;
  grid.costs = random_simplex_costs(n_costs, seed);
  return grid;
}

std::array<double, 3> state_indep_nv(double z0, const Mat3& rotation,
                                     const std::array<double, 3>& g, int d) {
  // H = R diag(4, 4, 4 / (1 - z0^2)) R^T, so H^{-1} = R diag(1, 1, 1 - z0^2) R^T / 4.
  const Eigen::Vector3d hinv_diag(0.25, 0.25, 0.25 * (1.0 - z0 * z0));
  const Mat3 hinv = rotation * hinv_diag.asDiagonal() * rotation.transpose();
  const Eigen::Vector3d root(std::sqrt(g[0]), std::sqrt(g[1]), std::sqrt(g[2]));
  const Mat3 m = root.asDiagonal() * hinv * root.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  const Eigen::Vector3d lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat3 sqrt_m = es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
  const double scale = lambda.sum() / (d - 1);
  return {scale * sqrt_m(0, 0) / g[0], scale * sqrt_m(1, 1) / g[1], scale * sqrt_m(2, 2) / g[2]};
}

StateIndepSummary state_indep_visit(const StateIndepGrid& grid,
                                    const std::function<void(const StateIndepRow&)>& visitor,
                                    const StateIndepOptions& options) {
  const int threads = options.threads;
  const int d = options.d;
  if (grid.size() == 0) raise(ErrorKind::EmptyGrid, "state-independent grid is empty");
  for (double z0 : grid.z0) {
    if (!(z0 >= 0.0) || z0 > 1.0 - default_policy().purity_guard) {
      std::ostringstream os;
      os << "z0 = " << z0 << " violates the purity guard";
      raise(ErrorKind::PurityGuard, os.str());
    }
  }
  for (const auto& g : grid.costs) {
    if (std::min({g[0], g[1], g[2]}) < 1e-10) raise(ErrorKind::SingularCost, "cost weight below 1e-10");
  }

  const std::size_t nb = grid.beta_deg.size();
  const std::size_t ng = grid.gamma_deg.size();
  const std::size_t nc = grid.costs.size();
  const std::size_t tasks = grid.z0.size() * grid.alpha_deg.size() * nb;
  const std::size_t per_task = ng * nc;
  const std::size_t block = static_cast<std::size_t>(resolve_threads(threads)) * 8;

  StateIndepSummary summary;
  summary.min_pairwise_sum = std::numeric_limits<double>::infinity();
  summary.min_total_sum = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 3>> results(block * per_task);
  StateIndepRow row;

  for (std::size_t first = 0; first < tasks; first += block) {
    const std::size_t count = std::min(block, tasks - first);
    parallel_for(count, threads, [&](std::size_t local) {
      const std::size_t task = first + local;
      const std::size_t ib = task % nb;
      const std::size_t ia = (task / nb) % grid.alpha_deg.size();
      const std::size_t iz = task / (nb * grid.alpha_deg.size());
      auto* out = &results[local * per_task];
      for (std::size_t ig = 0; ig < ng; ++ig) {
        if (options.reuse_gamma && ig > 0) {
          std::copy(out, out + nc, out + ig * nc);
          continue;
        }
        const Mat3 r = euler_rotation_deg({grid.alpha_deg[ia], grid.beta_deg[ib], grid.gamma_deg[ig]});
        for (std::size_t ic = 0; ic < nc; ++ic) {
          out[ig * nc + ic] = state_indep_nv(grid.z0[iz], r, grid.costs[ic], d);
        }
      }
    });
    for (std::size_t local = 0; local < count; ++local) {
      const std::size_t task = first + local;
      const std::size_t ib = task % nb;
      const std::size_t ia = (task / nb) % grid.alpha_deg.size();
      const std::size_t iz = task / (nb * grid.alpha_deg.size());
      const auto* in = &results[local * per_task];
      for (std::size_t ig = 0; ig < ng; ++ig) {
        for (std::size_t ic = 0; ic < nc; ++ic) {
          const auto& nv = in[ig * nc + ic];
          summary.min_pairwise_sum = std::min(
              {summary.min_pairwise_sum, nv[0] + nv[1], nv[0] + nv[2], nv[1] + nv[2]});
          summary.min_total_sum = std::min(summary.min_total_sum, nv[0] + nv[1] + nv[2]);
          if (visitor) {
            row.z0 = grid.z0[iz];
            row.euler_deg = {grid.alpha_deg[ia], grid.beta_deg[ib], grid.gamma_deg[ig]};
            row.g = grid.costs[ic];
            row.nv = nv;
            visitor(row);
          }
        }
      }
    }
    summary.points += count * per_task;
  }
  return summary;
}

std::vector<StateIndepRow> state_indep_sample(const StateIndepGrid& grid,
                                              const StateIndepOptions& options) {
  std::vector<StateIndepRow> rows;
  rows.reserve(grid.size());
  state_indep_visit(grid, [&](const StateIndepRow& r) { rows.push_back(r); }, options);
  return rows;
}

double two_param_objective(double c, double uz) {
  const double u2 = uz * uz;
  const double f = c * c + c * (1.0 - c) * (1.0 - u2) + u2 * (1.0 - c * c);
  const double tail = (1.0 - c) * (1.0 - u2);
  return 0.5 * (f + std::abs(f)) + 0.25 * tail * tail;
}

double two_param_objective_direct(const Vec3& axis, double phi) {
  const Mat3 r = rodrigues_rotation(axis.normalized(), phi);
  Mat3 p2 = Mat3::Zero();
  p2(0, 0) = 1.0;
  p2(1, 1) = 1.0;
  const RMatrix m = p2 * r * p2 * r.transpose() * p2;
  const double tr = sqrt_psd(hermitian_part(m)).trace();
  return 0.25 * tr * tr;
}

TwoParamMin min_two_param_state_indep(int resolution, int refine_iters) {
  if (resolution < 100) raise(ErrorKind::InvalidArgument, "resolution must be at least 100");
  if (refine_iters < 0) raise(ErrorKind::InvalidArgument, "refine_iters must be non-negative");
  TwoParamMin best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  double h = 2.0 / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double c = -1.0 + i * h;
    for (int j = 0; j < resolution; ++j) {
      const double uz = -1.0 + j * h;
      const double g = two_param_objective(c, uz);
      if (g < best.value) best = {g, c, uz};
    }
  }
  for (int round = 0; round < refine_iters; ++round) {
    const TwoParamMin centre = best;
    h /= 10.0;
    for (int i = -10; i <= 10; ++i) {
      const double c = std::clamp(centre.c + i * h, -1.0, 1.0);
      for (int j = -10; j <= 10; ++j) {
        const double uz = std::clamp(centre.uz + j * h, -1.0, 1.0);
        const double g = two_param_objective(c, uz);
        if (g < best.value) best = {g, c, uz};
      }
    }
  }
  return best;
}

PlaneCheck three_param_plane_check(const std::vector<Mat3>& rotations, double numeric_z0) {
  if (rotations.empty()) raise(ErrorKind::EmptyGrid, "no rotations to check");
  PlaneCheck out;
  out.numeric_z0 = numeric_z0;
  out.monotone = true;
  // Pure state: H^{-1} = P2 / 4 and Tr sqrt(R A R^T) = Tr sqrt(A) for every R.
  const double analytic_root_trace = std::sqrt(0.25) + std::sqrt(0.25) + 0.0;
  const double analytic = analytic_root_trace * analytic_root_trace;
  auto value_at = [](double z0, const Mat3& r) {
    const Eigen::Vector3d diag(0.25, 0.25, 0.25 * (1.0 - z0 * z0));
    const RMatrix hinv = r * diag.asDiagonal() * r.transpose();
    const double tr = sqrt_psd(hermitian_part(hinv)).trace();
    return tr * tr;
  };
  for (const auto& r : rotations) {
    out.analytic_max_deviation = std::max(out.analytic_max_deviation, std::abs(analytic - 1.0));
    const double numeric = value_at(numeric_z0, r);
    out.numeric_max_deviation = std::max(out.numeric_max_deviation, std::abs(numeric - 1.0));
    if (!(value_at(0.9, r) > analytic && numeric > analytic)) out.monotone = false;
  }
  return out;
}

HolevoStateIndep holevo_state_indep(const std::vector<double>& z0_grid) {
  if (z0_grid.empty()) raise(ErrorKind::EmptyGrid, "empty z0 grid");
  HolevoStateIndep best{std::numeric_limits<double>::infinity(), 0.0};
  for (double z0 : z0_grid) {
    const double v = 0.25 * (3.0 - z0 * z0 + 2.0 * z0);
    if (v < best.min_value) best = {v, z0};
  }
  return best;
}

std::vector<ComparisonPoint> rotated_pauli_comparison(const ComparisonConfig& config,
                                                      const NumericPolicy& policy) {
  if (config.n_costs < 1 || config.n_pauli < 1 || config.n_sld < 1) {
    raise(ErrorKind::EmptyGrid, "each cloud needs at least one sample");
  }
  const StatisticalModel model = qubit_model(config.z0, euler_rotation_deg(config.euler_deg), policy);
  const QfiBundle bundle = qfi_bundle(model, policy);
  std::vector<ComparisonPoint> out;

  std::mt19937_64 rng(substream_seed(config.seed, 1));
  for (int k = 0; k < config.n_costs; ++k) {
    const auto g = draw_simplex(rng);
    const RMatrix nv =
        optimal_covariance(bundle, CostMatrix::diagonal({g[0], g[1], g[2]}, policy), 2, policy);
    out.push_back({"optimal", g, {nv(0, 0), nv(1, 1), nv(2, 2)}});
  }

  auto mixture_cloud = [&](const char* label, const std::vector<Povm>& parts, int n,
                           std::uint64_t stream) {
    std::mt19937_64 local(substream_seed(config.seed, stream));
    for (int k = 0; k < n; ++k) {
      const auto w = draw_simplex(local);
      const auto spec = MixtureSpec::create({w[0], w[1], w[2]}, parts, policy);
      const RMatrix cov = inv_psd(fisher_info(model, mix(spec, policy), policy), policy);
      out.push_back({label, w, {cov(0, 0), cov(1, 1), cov(2, 2)}});
    }
  };
  mixture_cloud("pauli", pauli_measurements(model, policy), config.n_pauli, 2);
  mixture_cloud("sld", sld_measurements(model, bundle, policy), config.n_sld, 3);
  return out;
}

}  // namespace qest
