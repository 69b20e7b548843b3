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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qest/bounds.hpp"
#include "qest/error.hpp"
#include "qest/geometry.hpp"
#include "qest/matcore.hpp"
#include "qest/mc.hpp"
#include "qest/measurements.hpp"
#include "qest/models.hpp"
#include "qest/tradeoff.hpp"

namespace py = pybind11;
using namespace qest;

namespace {

CostMatrix cost(const RMatrix& g) { return CostMatrix::create(g); }

int dim_or(const StatisticalModel& m, std::optional<int> d) { return d ? *d : m.dim(); }

RMatrix curve_array(const std::vector<CurvePoint>& pts) {
  RMatrix out(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    out(i, 0) = pts[k].t;
    out(i, 1) = pts[k].nv1;
    out(i, 2) = pts[k].nv2;
  }
  return out;
}

py::dict bundle_dict(const StatisticalModel& model) {
  const QfiBundle b = qfi_bundle(model);
  py::dict d;
  d["H"] = b.H;
  d["D"] = b.D;
  d["Rinv"] = b.Rinv;
  d["R"] = b.R;
  d["Hinv"] = b.Hinv ? py::cast(*b.Hinv) : py::none();
  d["slds"] = b.slds;
  d["rlds"] = b.rlds;
  d["d_invariant"] = b.d_invariance.invariant;
  d["d_invariance_residual"] = b.d_invariance.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum multiparameter estimation bounds";

  py::register_exception<Error>(m, "QestError", PyExc_ValueError);

  py::class_<StatisticalModel>(m, "Model")
      .def_property_readonly("rho0", &StatisticalModel::rho0)
      .def_property_readonly("derivs", &StatisticalModel::derivs)
      .def_property_readonly("labels", &StatisticalModel::labels)
      .def_property_readonly("dim", &StatisticalModel::dim)
      .def_property_readonly("num_params", &StatisticalModel::num_params)
      .def("__repr__", [](const StatisticalModel& s) {
        return "<qest.Model dim=" + std::to_string(s.dim()) +
               " params=" + std::to_string(s.num_params()) + ">";
      });

  m.def("euler_rotation_deg", [](double a, double b, double c) { return euler_rotation_deg({a, b, c}); },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def("qubit_model",
        [](double z0, std::array<double, 3> euler) { return qubit_model(z0, euler_rotation_deg(euler)); },
        py::arg("z0"), py::arg("euler_deg") = std::array<double, 3>{0.0, 0.0, 0.0});
  m.def("qutrit_model", [](double k1, double k2) { return qutrit_model(k1, k2); }, py::arg("k1"),
        py::arg("k2"));
  m.def("generic_model",
        [](const CMatrix& rho0, const std::vector<CMatrix>& derivs, std::vector<std::string> labels) {
          return StatisticalModel::create(rho0, derivs, std::move(labels));
        },
        py::arg("rho0"), py::arg("derivs"), py::arg("labels") = std::vector<std::string>{});

  m.def("qfi_bundle", &bundle_dict, py::arg("model"),
        "H, D, R, Rinv, Hinv, SLDs, RLDs and the D-invariance check.");

  m.def("sld_bound", [](const StatisticalModel& s, const RMatrix& g) {
    return sld_bound(qfi_bundle(s), cost(g)).value;
  }, py::arg("model"), py::arg("G"));
  m.def("gm_bound", [](const StatisticalModel& s, const RMatrix& g, std::optional<int> d) {
    return gm_bound(qfi_bundle(s), cost(g), dim_or(s, d)).value;
  }, py::arg("model"), py::arg("G"), py::arg("d") = py::none());
  m.def("rld_holevo_bound", [](const StatisticalModel& s, const RMatrix& g) {
    return rld_holevo_bound(qfi_bundle(s), cost(g)).value;
  }, py::arg("model"), py::arg("G"));
  m.def("optimal_covariance", [](const StatisticalModel& s, const RMatrix& g, std::optional<int> d) {
    return optimal_covariance(qfi_bundle(s), cost(g), dim_or(s, d));
  }, py::arg("model"), py::arg("G"), py::arg("d") = py::none());

  m.def("projective_fisher", [](const StatisticalModel& s, const Vec3& v) {
    return fisher_info(s, projective_bloch(v));
  }, py::arg("model"), py::arg("direction"));
  m.def("pauli_mixture_fisher", [](const StatisticalModel& s, const std::vector<double>& w) {
    return fisher_info(s, mix(MixtureSpec::create(w, pauli_measurements(s))));
  }, py::arg("model"), py::arg("weights"));

  m.def("gm_curve_parametric",
        [](double u1, double u2, double det, int d, const std::vector<double>& t) {
          return curve_array(gm_curve_parametric(u1, u2, det, d, t));
        },
        py::arg("u1"), py::arg("u2"), py::arg("det_hinv"), py::arg("d"), py::arg("t"),
        "Rows (t, nv1, nv2).");
  m.def("gm_envelope",
        [](double u1, double u2, int d, int t_points, const std::vector<double>& x) {
          return curve_array(envelope_from_lines(two_param_bound(BoundKind::GillMassar, u1, u2, 0.0, 0.0, d),
                                                 angle_uniform_grid(t_points), x));
        },
        py::arg("u1"), py::arg("u2"), py::arg("d"), py::arg("t_points"), py::arg("x"),
        "Upper envelope of the GM line family; rows (t, nv1, nv2).");

  m.def("two_param_objective", &two_param_objective, py::arg("c"), py::arg("uz"));
  m.def("min_two_param_state_indep", [](int resolution, int refine) {
    const auto r = min_two_param_state_indep(resolution, refine);
    return py::make_tuple(r.value, r.c, r.uz);
  }, py::arg("resolution") = 401, py::arg("refine_iters") = 5);
  m.def("holevo_state_indep", [](const std::vector<double>& z0) {
    const auto r = holevo_state_indep(z0);
    return py::make_tuple(r.min_value, r.argmin_z0);
  }, py::arg("z0_grid"));
  m.def("state_indep_summary",
        [](double step, int n_costs, std::uint64_t seed, std::optional<std::vector<double>> z0,
           int threads) {
          const auto grid = make_state_indep_grid(z0 ? *z0 : default_state_indep_z0(), step, n_costs, seed);
          StateIndepOptions options;
          options.threads = threads;
          StateIndepSummary s;
          {
            py::gil_scoped_release release;
            s = state_indep_visit(grid, {}, options);
          }
          py::dict d;
          d["points"] = s.points;
          d["min_pairwise_sum"] = s.min_pairwise_sum;
          d["min_total_sum"] = s.min_total_sum;
          return d;
        },
        py::arg("step_deg") = 30.0, py::arg("n_costs") = 50, py::arg("seed") = 42,
        py::arg("z0") = py::none(), py::arg("threads") = 1);

  m.def("verify_gm_attainability",
        [](double z0, const std::vector<double>& g, long long n_copies, int n_trials,
           std::uint64_t seed, int threads) {
          const auto r = verify_gm_attainability(z0, CostMatrix::diagonal(g), n_copies, n_trials, seed,
                                                 threads);
          py::dict d;
          d["bound"] = r.bound;
          d["empirical"] = r.empirical;
          d["stderr"] = r.stderr_;
          d["n_copies"] = r.n_copies;
          d["n_trials"] = r.n_trials;
          d["seed"] = r.seed;
          d["pass"] = r.pass;
          d["estimator"] = r.estimator;
          return d;
        },
        py::arg("z0"), py::arg("cost_diag"), py::arg("n_copies") = 100000, py::arg("n_trials") = 500,
        py::arg("seed") = 42, py::arg("threads") = 1);
}
