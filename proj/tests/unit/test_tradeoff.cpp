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

#include <algorithm>
#include <random>

#include "check.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qest/tradeoff.hpp"

using namespace qest;

namespace {

// nv2 of the parametric GM curve at the nv1 values of the envelope grid,
// compared where the parametric t lies in [0.05, 0.95].
double envelope_vs_parametric(int points) {
  const double u1 = 0.25, u2 = 0.75, det = u1 * u2;
  std::vector<double> t_ref;
  for (int k = 0; k < 400; ++k) t_ref.push_back(0.05 + 0.9 * k / 399.0);
  const auto ref = gm_curve_parametric(u1, u2, det, 2, t_ref);
  std::vector<double> x;
  for (const auto& p : ref) x.push_back(p.nv1);
  const auto env = envelope_from_lines(two_param_bound(BoundKind::GillMassar, u1, u2, 0, 0, 2),
                                       angle_uniform_grid(points), x);
  double worst = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(env[k].nv2 - ref[k].nv2));
  return worst;
}

bool convex_decreasing(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (pts[k].second > pts[k - 1].second + 1e-12) return false;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const auto& a = pts[k - 1];
    const auto& b = pts[k];
    const auto& c = pts[k + 1];
    const double cross = (b.first - a.first) * (c.second - a.second) - (c.first - a.first) * (b.second - a.second);
    if (cross < -1e-12 * (1.0 + std::abs(c.first - a.first))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("tradeoff") {
  TEST_CASE("grids") {
    const auto g = angle_uniform_grid(9);
    REQUIRE(g.size() == 9);
    CHECK(g.front() > 0.0);
    CHECK(g.back() < 1.0);
    CHECK(g[4] == doctest::Approx(0.5));
    const auto l = linear_grid(0.0, 1.0, 5);
    CHECK(l[2] == doctest::Approx(0.5));
    const auto s = simplex_grid(4);
    CHECK(s.size() == 15);
    for (const auto& p : simplex_grid(10, 1e-3)) CHECK(std::min({p.s, p.t, p.r()}) >= 1e-3 - 1e-15);
  }

  TEST_CASE("parametric GM curve") {
    const auto c = gm_curve_parametric(0.25, 0.75, 0.1875, 2, {0.5});
    CHECK(c[0].nv1 == doctest::Approx(0.25 + std::sqrt(0.1875)));
    CHECK(c[0].nv2 == doctest::Approx(0.75 + std::sqrt(0.1875)));
    const auto c3 = gm_curve_parametric(0.25, 0.75, 0.1875, 3, {0.5});
    CHECK(c3[0].nv1 == doctest::Approx((0.25 + std::sqrt(0.1875)) / 2));
    // Where nv1 = u1 a d > 2 curve has nv2 = u2 / (d - 2).
    for (int d = 3; d <= 6; ++d) {
      const double k = (d - 2) * 0.25;
      const auto at = gm_curve_parametric(0.25, 0.75, 0.1875, d, {0.1875 / (0.1875 + k * k)});
      CHECK(at[0].nv1 == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(at[0].nv2 == doctest::Approx(0.75 / (d - 2)).epsilon(1e-12));
    }
    CHECK_QEST_ERROR(gm_curve_parametric(0.25, 0.75, 0.1875, 2, {0.0}), ErrorKind::BadGrid);
    CHECK_QEST_ERROR(gm_curve_parametric(0.25, 0.75, 0.1875, 2, {1.0}), ErrorKind::BadGrid);
    // Asymptotes.
    const auto far = gm_curve_parametric(0.25, 0.75, 0.1875, 2, {1e-10, 1.0 - 1e-10});
    CHECK(far[0].nv2 - 0.75 < 1e-4);
    CHECK(far[1].nv1 - 0.25 < 1e-4);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : gm_curve_parametric(0.25, 0.75, 0.1875, 2, angle_uniform_grid(200)))
      pts.emplace_back(p.nv1, p.nv2);
    CHECK(convex_decreasing(pts));
  }

  TEST_CASE("envelope matches parametric curve") {
    CHECK(envelope_vs_parametric(200) <= 2e-3);
    CHECK(envelope_vs_parametric(2000) <= 1e-5);
  }

  TEST_CASE("envelope shapes") {
    const auto x = linear_grid(0.3, 1.5, 50);
    // SLD lines all pass through (u1, u2): corner.
    // The best line is the one with the smallest t, which falls short of the
    // corner by t_min (x - u1) / (1 - t_min).
    const auto tg = angle_uniform_grid(200);
    const auto sld = envelope_from_lines(two_param_bound(BoundKind::Sld, 0.25, 0.75, 0, 0, 2), tg, x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double shortfall = tg[0] * (x[k] - 0.25) / (1 - tg[0]);
      CHECK(sld[k].nv2 == doctest::Approx(0.75 - shortfall).epsilon(1e-12));
    }
    // RLD with imaginary part a: asymptotic to nv1 = u1, nv2 = u2.
    const auto rld = envelope_from_lines(two_param_bound(BoundKind::RldHolevo, 0.25, 0.75, 0, 0.2, 2),
                                         angle_uniform_grid(2000), linear_grid(0.26, 20.0, 200));
    CHECK(rld.back().nv2 - 0.75 < 1e-2);
    CHECK(rld.back().nv2 >= 0.75 - 1e-12);
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : rld) pts.emplace_back(p.nv1, p.nv2);
    CHECK(convex_decreasing(pts));
    CHECK_QEST_ERROR(envelope_from_lines(two_param_bound(BoundKind::Sld, 0.25, 0.75, 0, 0, 2), {}, x),
                     ErrorKind::EmptyGrid);
  }

  TEST_CASE("optimal surface points satisfy the GM equality") {
    const auto b = qfi_bundle(qubit_model(0.7, oracle::euler_deg(10, 40, 70)));
    const auto grid = simplex_grid(20, 1e-6);
    const auto surf = gm_surface(b, grid, 2, 2);
    REQUIRE(surf.size() == grid.size());
    for (std::size_t k = 0; k < surf.size(); ++k) {
      const auto& p = surf[k];
      const double lhs = p.s * p.nv[0] + p.t * p.nv[1] + (1 - p.s - p.t) * p.nv[2];
      const double rhs = gm_bound(b, CostMatrix::diagonal({p.s, p.t, 1 - p.s - p.t}), 2).value;
      CHECK(std::abs(lhs - rhs) <= 1e-9);
      for (double v : p.nv) CHECK(v > 0);
    }
  }

  TEST_CASE("surface_min_nv3: GM above RLD, RLD flat bottom, single-parameter limit") {
    const double z = 0.7;
    const auto b = qfi_bundle(qubit_model(z));
    const auto grid = simplex_grid(100);
    const auto gm = tabulate_bound(model_bound(BoundKind::GillMassar, b, 2), grid, 2);
    const auto rld = tabulate_bound(model_bound(BoundKind::RldHolevo, b, 2), grid, 2);
    // Points with (nv1 - 1/4)(nv2 - 1/4) >= (z/4)^2, inside the RLD xy region.
    for (double nv1 : {0.4, 0.6, 1.0})
      for (double nv2 : {0.5, 0.8}) {
        const double g = surface_min_nv3(gm, nv1, nv2);
        const double r = surface_min_nv3(rld, nv1, nv2);
        CHECK(g > r);
        CHECK(r == doctest::Approx((1 - z * z) / 4).epsilon(1e-12));
      }
    CHECK(surface_min_nv3(gm, 1e6, 1e6) == doctest::Approx((1 - z * z) / 4).epsilon(1e-9));
    const BoundFn zero = [](const RMatrix&) { return 0.0; };
    CHECK_QEST_ERROR(surface_min_nv3(zero, 1.0, 1.0, simplex_grid(10)), ErrorKind::Infeasible);
  }

  TEST_CASE("state-independent grid: reuse matches literal evaluation") {
    const auto grid = make_state_indep_grid({0.5, 0.99, 1 - 1e-6}, 30.0, 5, 42);
    StateIndepOptions literal;
    literal.reuse_gamma = false;
    const auto a = state_indep_sample(grid, {});
    const auto c = state_indep_sample(grid, literal);
    REQUIRE(a.size() == grid.size());
    REQUIRE(c.size() == grid.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(a[k].nv[i] - c[k].nv[i]) / std::max(1.0, std::abs(c[k].nv[i])));
    CHECK(worst <= 1e-11);
    StateIndepOptions threaded;
    threaded.threads = 4;
    const auto t = state_indep_sample(grid, threaded);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(t[k].nv == a[k].nv);
  }

  TEST_CASE("state-independent floors on the 30 degree grid") {
    const auto grid = make_state_indep_grid(default_state_indep_z0(), 30.0, 10, 42);
    const auto s = state_indep_visit(grid, [](const StateIndepRow& row) {
      CHECK(row.nv[0] + row.nv[1] + row.nv[2] >= 1 - 1e-9);
    });
    CHECK(s.points == 6u * 13 * 13 * 13 * 10);
    CHECK(s.min_total_sum >= 1 - 1e-9);
    CHECK(s.min_pairwise_sum >= 0.25 - 1e-9);
  }

  TEST_CASE("state-independent rows satisfy the GM equality") {
    const auto grid = make_state_indep_grid({0.9}, 90.0, 3, 7);
    for (const auto& row : state_indep_sample(grid)) {
      const auto b = qfi_bundle(qubit_model(row.z0, euler_rotation_deg(row.euler_deg)));
      const double lhs = row.g[0] * row.nv[0] + row.g[1] * row.nv[1] + row.g[2] * row.nv[2];
      CHECK(std::abs(lhs - gm_bound(b, CostMatrix::diagonal({row.g[0], row.g[1], row.g[2]}), 2).value) <= 1e-9);
    }
  }

  TEST_CASE("two-parameter objective") {
    CHECK(two_param_objective(1.0, 0.3) == doctest::Approx(1.0));
    CHECK(two_param_objective(0.0, 0.0) == doctest::Approx(0.25));
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> phi(0.0, 3.14159265358979);
    for (int k = 0; k < 100; ++k) {
      const Vec3 u = oracle::random_unit(rng);
      const double p = phi(rng);
      CHECK(two_param_objective(std::cos(p), u(2)) ==
            doctest::Approx(two_param_objective_direct(u, p)).epsilon(1e-9));
    }
  }

  TEST_CASE("two-parameter minimum") {
    const auto m = min_two_param_state_indep(401, 5);
    CHECK(std::abs(m.value - 0.25) <= 1e-4);
    const auto m2 = min_two_param_state_indep(801, 5);
    CHECK(std::abs(m.value - m2.value) <= 1e-6);
  }

  TEST_CASE("three-parameter plane and Holevo value") {
    std::vector<Mat3> rots;
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> a(0.0, 360.0);
    for (int k = 0; k < 50; ++k) rots.push_back(oracle::euler_deg(a(rng), a(rng), a(rng)));
    const auto pc = three_param_plane_check(rots);
    CHECK(pc.analytic_max_deviation == 0.0);
    CHECK(pc.numeric_max_deviation <= 1e-3);
    CHECK(pc.monotone);

    const auto h = holevo_state_indep(linear_grid(0.0, 1.0, 1001));
    CHECK(std::abs(h.min_value - 0.75) <= 1e-12);
    CHECK(h.argmin_z0 == 0.0);
    CHECK(holevo_state_indep({1.0}).min_value == doctest::Approx(1.0));
  }

  TEST_CASE("rotated Pauli comparison") {
    ComparisonConfig cfg;
    cfg.n_costs = cfg.n_pauli = cfg.n_sld = 100;
    const auto pts = rotated_pauli_comparison(cfg);
    REQUIRE(pts.size() == 300);
    const auto b = qfi_bundle(qubit_model(cfg.z0, euler_rotation_deg(cfg.euler_deg)));
    const auto table = tabulate_bound(model_bound(BoundKind::GillMassar, b, 2), simplex_grid(200), 4);
    const Mat3 r = euler_rotation_deg(cfg.euler_deg);
    std::vector<double> pauli_excess, sld_excess;
    for (const auto& p : pts) {
      CHECK((p.label == "optimal" || p.label == "pauli" || p.label == "sld"));
      const double excess = p.nv[2] - surface_min_nv3(table, p.nv[0], p.nv[1]);
      CHECK(excess >= -1e-9);
      if (p.label == "pauli") {
        pauli_excess.push_back(excess);
        const auto nv = oracle::pauli_mixture_nv(cfg.z0, r, p.weights);
        for (int i = 0; i < 3; ++i) CHECK(p.nv[i] == doctest::Approx(nv[i]).epsilon(1e-9));
      }
      if (p.label == "sld") sld_excess.push_back(excess);
    }
    auto median = [](std::vector<double> v) {
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      return v[v.size() / 2];
    };
    CHECK(median(sld_excess) > median(pauli_excess));
  }

  TEST_CASE("random simplex costs") {
    const auto c = random_simplex_costs(200, 3);
    for (const auto& g : c) {
      CHECK(g[0] + g[1] + g[2] == doctest::Approx(1.0));
      CHECK(std::min({g[0], g[1], g[2]}) > 0);
    }
    CHECK(random_simplex_costs(5, 3) == random_simplex_costs(5, 3));
  }
}
