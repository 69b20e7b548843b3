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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qest/bounds.hpp"
#include "qest/error.hpp"
#include "qest/mc.hpp"
#include "qest/measurements.hpp"
#include "qest/models.hpp"
#include "qest/parallel.hpp"
#include "qest/tradeoff.hpp"

using namespace qest;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome qubit_qfi() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double z : {0.0, 0.3, 0.7, 0.99}) {
    const auto b = qfi_bundle(qubit_model(z));
    RMatrix h = RMatrix::Zero(3, 3);
    h.diagonal() << 4.0, 4.0, 4.0 / (1.0 - z * z);
    worst = std::max(worst, max_abs(RMatrix(b.H - h)));
    CMatrix lz = CMatrix::Zero(2, 2);
    lz(0, 0) = 2.0 / (1.0 + z);
    lz(1, 1) = -2.0 / (1.0 - z);
    worst = std::max(worst, max_abs(CMatrix(b.slds[0] - 2.0 * oracle::sx())));
    worst = std::max(worst, max_abs(CMatrix(b.slds[1] - 2.0 * oracle::sy())));
    worst = std::max(worst, max_abs(CMatrix(b.slds[2] - lz)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 1.0, "max dev " + fmt("%.2e", worst) + ", " + fmt("%.3f", secs) + " s"};
}

// 50 x 50 grid over (s, t) with s + t <= 1.
template <typename Fn>
void cost_grid(Fn&& fn) {
  for (int i = 0; i < 50; ++i)
    for (int j = 0; i + j < 50; ++j) {
      const double s = i / 49.0, t = j / 49.0;
      fn(s, t, std::max(0.0, 1.0 - s - t));
    }
}

Outcome bound_ordering() {
  const auto t0 = Clock::now();
  const auto b = qfi_bundle(qubit_model(0.7));
  double worst_slack = 1e300, min_gap = 1e300;
  cost_grid([&](double s, double t, double r) {
    const auto g = CostMatrix::diagonal({s, t, r});
    const double gm = gm_bound(b, g, 2).value;
    const double rld = rld_holevo_bound(b, g).value;
    const double sld = sld_bound(b, g).value;
    worst_slack = std::min({worst_slack, gm - rld, rld - sld});
    if (s > 0 && t > 0 && r > 1e-12) min_gap = std::min(min_gap, gm - rld);
  });
  const double secs = seconds_since(t0);
  return {worst_slack >= -1e-9 && min_gap > 1e-9 && secs < 5.0,
          "min slack " + fmt("%.2e", worst_slack) + ", min interior GM-RLD gap " + fmt("%.3e", min_gap) + ", " +
              fmt("%.3f", secs) + " s"};
}

Outcome closed_forms() {
  double worst = 0.0;
  for (double z : {0.0, 0.3, 0.7, 0.99}) {
    const auto b = qfi_bundle(qubit_model(z));
    cost_grid([&](double s, double t, double r) {
      const auto g = CostMatrix::diagonal({s, t, r});
      worst = std::max(worst, std::abs(gm_bound(b, g, 2).value - oracle::comp_gm(z, s, t, r)));
      worst = std::max(worst, std::abs(rld_holevo_bound(b, g).value - oracle::comp_rld(z, s, t, r)));
    });
  }
  return {worst <= 1e-10, "max dev " + fmt("%.2e", worst)};
}

Outcome two_param_curves() {
  const double u1 = 0.25, u2 = 0.75, det = u1 * u2;
  std::vector<double> t_ref;
  for (int k = 0; k < 200; ++k) t_ref.push_back(0.05 + 0.9 * k / 199.0);
  const auto ref = gm_curve_parametric(u1, u2, det, 2, t_ref);
  std::vector<double> x;
  for (const auto& p : ref) x.push_back(p.nv1);
  const auto env = envelope_from_lines(two_param_bound(BoundKind::GillMassar, u1, u2, 0, 0, 2),
                                       angle_uniform_grid(200), x);
  double dev = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) dev = std::max(dev, std::abs(env[k].nv2 - ref[k].nv2));

  // d = 2 stays strictly above the corner and approaches both asymptotes.
  const auto grid = angle_uniform_grid(2000);
  bool d2_above = true;
  for (const auto& p : gm_curve_parametric(u1, u2, det, 2, grid)) d2_above &= p.nv1 > u1 && p.nv2 > u2;
  const auto ends = gm_curve_parametric(u1, u2, det, 2, {1e-8, 1.0 - 1e-8});
  const double asym = std::max(ends[0].nv2 - u2, ends[1].nv1 - u1);
  // d > 2 never enters the SLD region {nv1 > u1, nv2 > u2}; where nv1 = u1 its
  // nv2 is u2 / (d - 2), so d = 3 passes through the corner and d > 3 below it.
  bool below = true;
  for (int d = 3; d <= 6; ++d) {
    for (const auto& p : gm_curve_parametric(u1, u2, det, d, grid))
      below &= !(p.nv1 > u1 + 1e-12 && p.nv2 > u2 + 1e-12);
    const double k = (d - 2) * u1;
    const double t_star = det / (det + k * k);
    const auto at = gm_curve_parametric(u1, u2, det, d, {t_star});
    below &= std::abs(at[0].nv1 - u1) < 1e-12 && at[0].nv2 <= u2 + 1e-12;
  }
  return {dev <= 2e-3 && d2_above && asym < 1e-3 && below,
          "envelope dev " + fmt("%.2e", dev) + ", d=2 above corner " + (d2_above ? "yes" : "no") +
              ", asymptote gap " + fmt("%.1e", asym) + ", d>2 outside SLD quadrant " + (below ? "yes" : "no")};
}

Outcome two_param_floor() {
  const auto t0 = Clock::now();
  const auto m = min_two_param_state_indep(401, 5);
  const double secs = seconds_since(t0);
  return {std::abs(m.value - 0.25) <= 1e-4 && secs < 10.0,
          "min " + fmt("%.10f", m.value) + " at c=" + fmt("%.4f", m.c) + ", uz=" + fmt("%.4f", m.uz) + ", " +
              fmt("%.3f", secs) + " s"};
}

Outcome plane() {
  std::vector<Mat3> rots;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> a(0.0, 360.0);
  for (int k = 0; k < 200; ++k) rots.push_back(oracle::euler_deg(a(rng), a(rng), a(rng)));
  const auto pc = three_param_plane_check(rots);

  const int threads = resolve_threads(0);
  StateIndepOptions coarse_opts;
  auto t0 = Clock::now();
  const auto coarse = state_indep_visit(make_state_indep_grid(default_state_indep_z0(), 30.0, 50, 42), {},
                                        coarse_opts);
  const double coarse_secs = seconds_since(t0);

  StateIndepOptions full_opts;
  full_opts.threads = threads;
  t0 = Clock::now();
  const auto full = state_indep_visit(make_state_indep_grid(default_state_indep_z0(), 3.0, 50, 42), {},
                                      full_opts);
  const double full_secs = seconds_since(t0);

  const bool floors = full.min_total_sum >= 1 - 1e-9 && full.min_pairwise_sum >= 0.25 - 1e-9 &&
                      coarse.min_total_sum >= 1 - 1e-9 && coarse.min_pairwise_sum >= 0.25 - 1e-9;
  std::ostringstream os;
  os << "analytic dev " << pc.analytic_max_deviation << ", full grid " << full.points << " pts min total "
     << fmt("%.9f", full.min_total_sum) << " min pair " << fmt("%.9f", full.min_pairwise_sum) << " in "
     << fmt("%.1f", full_secs) << " s (" << threads << " threads), 30deg grid " << fmt("%.2f", coarse_secs)
     << " s (1 thread)";
  return {pc.analytic_max_deviation == 0.0 && floors && full_secs < 300.0 && coarse_secs < 10.0, os.str()};
}

Outcome holevo() {
  std::vector<double> z;
  for (int k = 0; k <= 10000; ++k) z.push_back(k / 10000.0);
  const auto h = holevo_state_indep(z);
  return {std::abs(h.min_value - 0.75) <= 1e-12 && h.argmin_z0 == 0.0,
          "min " + fmt("%.15f", h.min_value) + " at z0=" + fmt("%g", h.argmin_z0)};
}

Outcome gm_trace_constraint() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const auto m = qubit_model(0.99 * u(rng), oracle::euler_deg(360 * u(rng), 360 * u(rng), 360 * u(rng)));
    worst = std::max(worst, gm_trace(m, Povm::create(oracle::random_qubit_povm(2 + k % 3, rng))));
  }
  double exact_dev = 0.0;
  for (double z : {0.0, 0.5, 0.9}) {
    const auto m = qubit_model(z);
    const auto pauli = pauli_measurements(m);
    for (const auto& p : pauli) exact_dev = std::max(exact_dev, std::abs(gm_trace(m, p) - 1.0));
    for (int k = 0; k < 20; ++k) {
      const double a = u(rng), b = (1 - a) * u(rng);
      const Povm mixed = mix(MixtureSpec::create({a, b, 1 - a - b}, pauli));
      exact_dev = std::max(exact_dev, std::abs(gm_trace(m, mixed) - 1.0));
    }
  }
  return {worst <= 1 + 1e-8 && exact_dev <= 1e-9,
          "max random Tr FH^-1 " + fmt("%.12f", worst) + ", aligned dev " + fmt("%.2e", exact_dev)};
}

Outcome rotated_optimality() {
  const double z = 0.92;
  ComparisonConfig cfg;
  const Mat3 r = euler_rotation_deg(cfg.euler_deg);
  const auto model = qubit_model(z, r);
  const auto b = qfi_bundle(model);
  const auto pauli = pauli_measurements(model);
  double worst = 0.0;
  const double delta = 1e-9;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> w(3, delta);
    w[static_cast<std::size_t>(i)] = 1.0 - 2.0 * delta;
    const RMatrix nv = inv_psd(fisher_info(model, mix(MixtureSpec::create(w, pauli))));
    const double target = 0.25 * (1 - z * z * r(i, 2) * r(i, 2));
    worst = std::max(worst, std::abs(nv(i, i) - target));
    // Also the GM bound for the pure cost e_i e_i^T.
    RMatrix gi = RMatrix::Zero(3, 3);
    gi(i, i) = 1.0;
    worst = std::max(worst, std::abs(gm_bound(b, CostMatrix::create(gi), 2).value - target));
  }

  const auto pts = rotated_pauli_comparison(cfg);
  const auto table = tabulate_bound(model_bound(BoundKind::GillMassar, b, 2), simplex_grid(200), resolve_threads(0));
  double min_slack = 1e300;
  std::vector<double> pauli_excess, sld_excess;
  for (const auto& p : pts) {
    const double excess = p.nv[2] - surface_min_nv3(table, p.nv[0], p.nv[1]);
    if (p.label == "pauli") pauli_excess.push_back(excess);
    if (p.label == "sld") sld_excess.push_back(excess);
    if (p.label != "optimal") min_slack = std::min(min_slack, excess);
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
  };
  const double ms = median(sld_excess), mp = median(pauli_excess);
  return {worst <= 1e-6 && min_slack >= -1e-9 && ms > mp,
          "pure-cost dev " + fmt("%.2e", worst) + ", min slack above surface " + fmt("%.2e", min_slack) +
              ", median excess sld " + fmt("%.4f", ms) + " vs pauli " + fmt("%.4f", mp)};
}

// Mixed second difference of the RLD bound in the diagonal cost entries i, j.
double mixed_difference(const QfiBundle& b, int i, int j) {
  const double h = 1e-3;
  auto f = [&](double di, double dj) {
    std::vector<double> g(8, 1.0 / 8.0);
    g[static_cast<std::size_t>(i)] += di;
    g[static_cast<std::size_t>(j)] += dj;
    return rld_holevo_bound(b, CostMatrix::diagonal(g)).value;
  };
  return f(h, h) - f(h, 0) - f(0, h) + f(0, 0);
}

Outcome qutrit() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.02, 0.96);
  double sld_dev = 0.0, d_dev = 0.0, residual = 0.0, cross = 0.0, within = 1e300;
  int spectra = 0;
  while (spectra < 20) {
    const double k1 = u(rng), k2 = u(rng), k3 = 1 - k1 - k2;
    if (k3 < 0.02 || std::abs(k1 - k2) < 0.01 || std::abs(k1 - k3) < 0.01 || std::abs(k2 - k3) < 0.01) continue;
    ++spectra;
    const auto b = qfi_bundle(qutrit_model(k1, k2));
    for (int i = 0; i < 8; ++i)
      sld_dev = std::max(sld_dev, max_abs(CMatrix(b.slds[static_cast<std::size_t>(i)] - oracle::qutrit_sld(k1, k2, i + 1))));
    d_dev = std::max(d_dev, max_abs(RMatrix(b.D.cwiseAbs() - oracle::qutrit_abs_d(k1, k2))));
    residual = std::max(residual, b.d_invariance.residual);
    const int block[8] = {0, 0, 1, 2, 2, 3, 3, 1};  // {1,2}, {4,5}, {6,7}; 3 and 8 trivial
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) {
        const double md = std::abs(mixed_difference(b, i, j));
        const bool coupled = block[i] == block[j] && block[i] != 1;
        if (coupled) within = std::min(within, md);
        else cross = std::max(cross, md);
      }
  }
  return {sld_dev <= 1e-9 && d_dev <= 1e-9 && residual < 1e-8 && cross <= 1e-8 && within > 1e-8,
          "SLD dev " + fmt("%.2e", sld_dev) + ", |D| dev " + fmt("%.2e", d_dev) + ", D-inv residual " +
              fmt("%.2e", residual) + ", cross-block mixed diff " + fmt("%.2e", cross) + ", in-block min " +
              fmt("%.2e", within)};
}

Outcome monte_carlo() {
  const auto g = CostMatrix::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto t0 = Clock::now();
  const auto a = verify_gm_attainability(0.7, g, 100000, 500, 42, 1);
  const double secs = seconds_since(t0);
  const auto b = verify_gm_attainability(0.7, g, 100000, 500, 42, 1);
  const auto c = verify_gm_attainability(0.7, g, 100000, 500, 42, resolve_threads(0));
  const bool identical = a.empirical == b.empirical && a.stderr_ == b.stderr_ && a.empirical == c.empirical &&
                         a.stderr_ == c.stderr_;
  const bool within = std::abs(a.relative_error) <= 0.05;
  const bool respects = a.empirical >= a.bound - 3 * a.stderr_;
  return {within && respects && identical && secs < 60.0,
          "bound " + fmt("%.5f", a.bound) + ", empirical " + fmt("%.5f", a.empirical) + " +- " +
              fmt("%.5f", a.stderr_) + " (rel " + fmt("%+.2f%%", 100 * a.relative_error) + "), reruns identical " +
              (identical ? "yes" : "no") + ", " + fmt("%.3f", secs) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"qubit-qfi-closed-form", qubit_qfi},
      {"bound-ordering", bound_ordering},
      {"closed-form-agreement", closed_forms},
      {"two-param-curves", two_param_curves},
      {"two-param-floor", two_param_floor},
      {"state-indep-plane", plane},
      {"holevo-state-indep", holevo},
      {"gm-trace-constraint", gm_trace_constraint},
      {"rotated-pure-cost-optimality", rotated_optimality},
      {"qutrit", qutrit},
      {"monte-carlo-attainability", monte_carlo},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
