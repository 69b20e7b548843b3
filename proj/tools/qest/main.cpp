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

// qest: command-line driver for the estimation-bound library.

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qest/bounds.hpp"
#include "qest/error.hpp"
#include "qest/geometry.hpp"
#include "qest/mc.hpp"
#include "qest/models.hpp"
#include "qest/parallel.hpp"
#include "qest/spec_io.hpp"
#include "qest/tradeoff.hpp"

#ifndef QEST_VERSION
#define QEST_VERSION "unknown"
#endif

namespace {

using json = nlohmann::json;
using namespace qest;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInternal = 4;

// Shortest round-trip is not required; 17 significant digits always is.
std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : path_(path) {
    if (path.empty()) {
      out_ = &std::cout;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) raise(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
      out_ = &file_;
    }
    for (std::size_t i = 0; i < header.size(); ++i) *out_ << (i ? "," : "") << header[i];
    *out_ << '\n';
  }

  void row(std::initializer_list<double> values, const std::string& prefix = {}) {
    bool first = true;
    if (!prefix.empty()) {
      *out_ << prefix;
      first = false;
    }
    for (double v : values) {
      if (!first) *out_ << ',';
      *out_ << fmt(v);
      first = false;
    }
    *out_ << '\n';
  }

  void close() {
    if (file_.is_open()) file_.close();
    else out_->flush();
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) raise(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text << '\n';
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot read '" + path + "' for checksum");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

json real_matrix(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json complex_matrix(const CMatrix& m) {
  return {{"re", real_matrix(m.real())}, {"im", real_matrix(m.imag())}};
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
      raise(ErrorKind::InvalidArgument, std::string("bad number '") + item + "' in " + what);
    }
    out.push_back(v);
  }
  if (out.empty()) raise(ErrorKind::InvalidArgument, std::string(what) + " is empty");
  return out;
}

std::array<double, 3> parse_euler(const std::string& text) {
  const auto v = parse_list(text, "--euler");
  if (v.size() != 3) raise(ErrorKind::InvalidArgument, "--euler needs three comma-separated angles");
  return {v[0], v[1], v[2]};
}

struct Globals {
  std::string out;
  std::string manifest;
  std::uint64_t seed = 42;
  bool seed_given = false;
  int threads = 1;
};

struct RunRecord {
  std::string subcommand;
  json parameters = json::object();
  std::vector<std::string> outputs;
};

void write_manifest(const RunRecord& run, const std::string& path, double wall_s) {
  json outputs = json::array();
  for (const auto& p : run.outputs) outputs.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  json m = {{"subcommand", run.subcommand},
            {"parameters", run.parameters},
            {"outputs", outputs},
            {"tool_version", QEST_VERSION},
            {"wall_time_s", wall_s}};
  emit_text(m.dump(2), path);
}

BoundKind parse_bound(const std::string& s) {
  if (s == "sld") return BoundKind::Sld;
  if (s == "gm") return BoundKind::GillMassar;
  if (s == "rld") return BoundKind::RldHolevo;
  raise(ErrorKind::InvalidArgument, "unknown bound '" + s + "'");
}

// ---- subcommands ----------------------------------------------------------------

struct QfiArgs {
  std::string model;
};

int run_qfi(const QfiArgs& a, const Globals& g, RunRecord& run) {
  const StatisticalModel model = model_from_json(read_text_file(a.model));
  const QfiBundle b = qfi_bundle(model);
  json slds = json::array();
  for (const auto& l : b.slds) slds.push_back(complex_matrix(l));
  json doc = {{"labels", model.labels()},
              {"dim", model.dim()},
              {"H", real_matrix(b.H)},
              {"D", real_matrix(b.D)},
              {"Rinv", complex_matrix(b.Rinv)},
              {"slds", slds},
              {"d_invariant", b.d_invariance.invariant},
              {"d_invariance_residual", b.d_invariance.residual}};
  if (b.Hinv) doc["Hinv"] = real_matrix(*b.Hinv);
  else doc["Hinv"] = nullptr;
  emit_text(doc.dump(2), g.out);
  run.parameters = {{"model", a.model}};
  return kExitOk;
}

struct CurveArgs {
  std::string bound = "gm";
  double u1 = 0.25;
  double u2 = 0.75;
  double b = 0.0;
  double a = 0.25;
  std::string d = "2,3,4,5,6";
  int points = 200;
  double x_min = 0.01;
  double x_max = 1.5;
  std::string method = "envelope";
  bool emit_lines = false;
};

int run_curve(const CurveArgs& a, const Globals& g, RunRecord& run) {
  const BoundKind kind = parse_bound(a.bound);
  if (a.method != "envelope" && a.method != "parametric") {
    raise(ErrorKind::InvalidArgument, "--method must be envelope or parametric");
  }
  if (a.method == "parametric" && kind != BoundKind::GillMassar) {
    raise(ErrorKind::InvalidArgument, "the parametric curve exists only for --bound gm");
  }
  if (a.points < 2) raise(ErrorKind::InvalidArgument, "--points must be at least 2");
  std::vector<int> dims;
  for (double d : parse_list(a.d, "--d")) {
    if (d != std::floor(d) || d < 2) raise(ErrorKind::InvalidArgument, "--d entries must be integers >= 2");
    dims.push_back(static_cast<int>(d));
  }
  const auto t_grid = angle_uniform_grid(a.points);
  const auto x_grid = linear_grid(a.x_min, a.x_max, a.points);

  CsvWriter csv(g.out, {"t", "nv1", "nv2", "d"});
  std::optional<CsvWriter> lines;
  if (a.emit_lines) {
    if (g.out.empty()) raise(ErrorKind::InvalidArgument, "--emit-lines needs --out");
    lines.emplace(g.out + ".lines.csv", std::vector<std::string>{"t", "bound", "d"});
  }
  for (int d : dims) {
    const BoundFn fn = two_param_bound(kind, a.u1, a.u2, a.b, a.a, d);
    const auto pts = a.method == "parametric"
                         ? gm_curve_parametric(a.u1, a.u2, a.u1 * a.u2 - a.b * a.b, d, t_grid)
                         : envelope_from_lines(fn, t_grid, x_grid);
    for (const auto& p : pts) csv.row({p.t, p.nv1, p.nv2, static_cast<double>(d)});
    if (lines) {
      for (double t : t_grid) {
        RMatrix cost = RMatrix::Zero(2, 2);
        cost(0, 0) = t;
        cost(1, 1) = 1.0 - t;
        lines->row({t, fn(cost), static_cast<double>(d)});
      }
    }
  }
  csv.close();
  if (!g.out.empty()) run.outputs.push_back(g.out);
  if (lines) {
    lines->close();
    run.outputs.push_back(g.out + ".lines.csv");
  }
  run.parameters = {{"bound", a.bound}, {"u1", a.u1},         {"u2", a.u2},
                    {"b", a.b},         {"a", a.a},           {"d", dims},
                    {"points", a.points}, {"x_min", a.x_min}, {"x_max", a.x_max},
                    {"method", a.method}, {"emit_lines", a.emit_lines}};
  return kExitOk;
}

struct SurfaceArgs {
  std::string bound = "gm";
  double z0 = 0.7;
  std::string euler = "0,0,0";
  int grid = 200;
  double eps = 1e-6;
};

int run_surface(const SurfaceArgs& a, const Globals& g, RunRecord& run) {
  const BoundKind kind = parse_bound(a.bound);
  if (kind == BoundKind::Sld) raise(ErrorKind::InvalidArgument, "--bound must be gm or rld");
  const StatisticalModel model = qubit_model(a.z0, euler_rotation_deg(parse_euler(a.euler)));
  const QfiBundle bundle = qfi_bundle(model);
  const auto gm = gm_surface(bundle, simplex_grid(a.grid, a.eps), 2, g.threads);

  CsvWriter csv(g.out, {"s", "t", "nv1", "nv2", "nv3"});
  if (kind == BoundKind::GillMassar) {
    for (const auto& p : gm) csv.row({p.s, p.t, p.nv[0], p.nv[1], p.nv[2]});
  } else {
    // RLD surface evaluated above the same (nv1, nv2) points as the GM surface.
    const BoundTable table =
        tabulate_bound(model_bound(BoundKind::RldHolevo, bundle, 2), simplex_grid(a.grid), g.threads);
    std::vector<double> nv3(gm.size());
    parallel_for(gm.size(), g.threads,
                 [&](std::size_t k) { nv3[k] = surface_min_nv3(table, gm[k].nv[0], gm[k].nv[1]); });
    for (std::size_t k = 0; k < gm.size(); ++k) {
      csv.row({gm[k].s, gm[k].t, gm[k].nv[0], gm[k].nv[1], nv3[k]});
    }
  }
  csv.close();
  if (!g.out.empty()) run.outputs.push_back(g.out);
  run.parameters = {{"bound", a.bound}, {"z0", a.z0},  {"euler_deg", parse_euler(a.euler)},
                    {"grid", a.grid},   {"eps", a.eps}, {"threads", g.threads}};
  return kExitOk;
}

struct StateIndepArgs {
  std::string z0;
  double step = 3.0;
  int costs = 50;
  bool literal = false;
  int resolution = 401;
  int refine = 5;
};

int run_state_indep(const StateIndepArgs& a, const Globals& g, RunRecord& run) {
  std::vector<double> z0 = a.z0.empty() ? default_state_indep_z0() : parse_list(a.z0, "--z0");
  const StateIndepGrid grid = make_state_indep_grid(z0, a.step, a.costs, g.seed);
  StateIndepOptions options;
  options.threads = g.threads;
  options.reuse_gamma = !a.literal;

  std::optional<CsvWriter> csv;
  if (!g.out.empty()) {
    csv.emplace(g.out, std::vector<std::string>{"z0", "alpha_deg", "beta_deg", "gamma_deg", "g1", "g2",
                                                "g3", "nvx", "nvy", "nvz"});
  }
  std::function<void(const StateIndepRow&)> visitor;
  if (csv) {
    visitor = [&](const StateIndepRow& r) {
      csv->row({r.z0, r.euler_deg[0], r.euler_deg[1], r.euler_deg[2], r.g[0], r.g[1], r.g[2], r.nv[0],
                r.nv[1], r.nv[2]});
    };
  }
  const StateIndepSummary s = state_indep_visit(grid, visitor, options);
  if (csv) {
    csv->close();
    run.outputs.push_back(g.out);
  }
  const TwoParamMin two = min_two_param_state_indep(a.resolution, a.refine);
  std::vector<Mat3> rotations;
  for (double al : {0.0, 25.0, 90.0, 137.0}) {
    for (double be : {0.0, 25.0, 60.0, 211.0}) rotations.push_back(euler_rotation_deg({al, be, 55.0}));
  }
  const PlaneCheck plane = three_param_plane_check(rotations);
  const HolevoStateIndep holevo = holevo_state_indep(linear_grid(0.0, 1.0, 1001));

  const bool floors_ok = s.min_pairwise_sum >= 0.25 - 1e-9 && s.min_total_sum >= 1.0 - 1e-9;
  json summary = {{"points", s.points},
                  {"min_pairwise_sum", s.min_pairwise_sum},
                  {"min_total_sum", s.min_total_sum},
                  {"two_param_min", two.value},
                  {"two_param_argmin", {{"c", two.c}, {"uz", two.uz}}},
                  {"plane_check",
                   {{"analytic_max_deviation", plane.analytic_max_deviation},
                    {"numeric_max_deviation", plane.numeric_max_deviation},
                    {"numeric_z0", plane.numeric_z0},
                    {"monotone", plane.monotone}}},
                  {"holevo_min", holevo.min_value},
                  {"holevo_argmin_z0", holevo.argmin_z0},
                  {"floors_ok", floors_ok}};
  std::cout << summary.dump(2) << '\n';
  run.parameters = {{"z0", z0},          {"step_deg", a.step},         {"costs", a.costs},
                    {"seed", g.seed},    {"literal", a.literal},       {"resolution", a.resolution},
                    {"refine", a.refine}, {"threads", g.threads}};
  if (!floors_ok) {
    std::cerr << "qest: state-independent floor violated\n";
    return kExitNumeric;
  }
  return kExitOk;
}

struct CompareArgs {
  double z0 = 0.92;
  std::string euler = "25,25,55";
  int samples = 400;
  int grid = 200;
};

int run_compare(const CompareArgs& a, const Globals& g, RunRecord& run) {
  ComparisonConfig cfg;
  cfg.z0 = a.z0;
  cfg.euler_deg = parse_euler(a.euler);
  cfg.n_costs = cfg.n_pauli = cfg.n_sld = a.samples;
  cfg.seed = g.seed;
  const auto points = rotated_pauli_comparison(cfg);
  const QfiBundle bundle = qfi_bundle(qubit_model(cfg.z0, euler_rotation_deg(cfg.euler_deg)));
  const BoundTable table =
      tabulate_bound(model_bound(BoundKind::GillMassar, bundle, 2), simplex_grid(a.grid), g.threads);
  CsvWriter csv(g.out, {"label", "w1", "w2", "w3", "nv1", "nv2", "nv3", "surface_nv3"});
  for (const auto& p : points) {
    const double surface = surface_min_nv3(table, p.nv[0], p.nv[1]);
    csv.row({p.weights[0], p.weights[1], p.weights[2], p.nv[0], p.nv[1], p.nv[2], surface}, p.label);
  }
  csv.close();
  if (!g.out.empty()) run.outputs.push_back(g.out);
  run.parameters = {{"z0", a.z0}, {"euler_deg", cfg.euler_deg}, {"samples", a.samples},
                    {"grid", a.grid}, {"seed", g.seed}};
  return kExitOk;
}

struct SimulateArgs {
  std::string config;
};

int run_simulate(const SimulateArgs& a, const Globals& g, RunRecord& run) {
  const SimSetup setup = sim_setup_from_json(
      read_text_file(a.config), g.seed_given ? std::optional<std::uint64_t>(g.seed) : std::nullopt,
      g.threads);
  const bool optimal = setup.measurement_kind == "optimal";
  const CostReport r = cost_report(setup.config, setup.cost, optimal);
  json doc = {{"bound", r.bound},
              {"empirical", r.empirical},
              {"stderr", r.stderr_},
              {"n_copies", r.n_copies},
              {"n_trials", r.n_trials},
              {"seed", r.seed},
              {"pass", r.pass},
              {"prediction", r.prediction},
              {"relative_error", r.relative_error},
              {"measurement", setup.measurement_kind},
              {"estimator", r.estimator}};
  emit_text(doc.dump(2), g.out);
  if (!g.out.empty()) run.outputs.push_back(g.out);
  run.parameters = {{"config", a.config},          {"seed", r.seed},
                    {"n_copies", r.n_copies},      {"n_trials", r.n_trials},
                    {"measurement", setup.measurement_kind}, {"threads", g.threads}};
  if (!r.pass) {
    std::cerr << "qest: simulated cost does not meet the bound check\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum multiparameter estimation bounds and trade-off curves"};
  app.set_version_flag("--version", std::string(QEST_VERSION));
  app.require_subcommand(1);

  Globals g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--out", g.out, "Output path (stdout when omitted)");
    sub->add_option("--manifest", g.manifest, "Write a run manifest with output checksums here");
    sub->add_option("--seed", g.seed, "Random seed")->default_val(42)->each([&](const std::string&) {
      g.seed_given = true;
    });
    sub->add_option("--threads", g.threads, "Worker threads (0 = all cores)")
        ->default_val(1)
        ->check(CLI::NonNegativeNumber);
  };

  QfiArgs qfi;
  auto* c_qfi = app.add_subcommand("qfi", "SLD/RLD quantum Fisher information of a model");
  c_qfi->add_option("--model", qfi.model, "Model spec JSON file")->required();
  add_globals(c_qfi);

  CurveArgs curve;
  auto* c_curve = app.add_subcommand("curve", "Two-parameter trade-off curves (CSV t,nv1,nv2,d)");
  c_curve->add_option("--bound", curve.bound, "sld, gm or rld")->capture_default_str();
  c_curve->add_option("--u1", curve.u1, "(H^-1)_11")->capture_default_str();
  c_curve->add_option("--u2", curve.u2, "(H^-1)_22")->capture_default_str();
  c_curve->add_option("--b", curve.b, "(H^-1)_12")->capture_default_str();
  c_curve->add_option("--a", curve.a, "Im(R^-1)_12, rld only")->capture_default_str();
  c_curve->add_option("--d", curve.d, "Comma-separated Hilbert dimensions")->capture_default_str();
  c_curve->add_option("--points", curve.points, "Grid points in t and in nv1")->capture_default_str();
  c_curve->add_option("--x-min", curve.x_min, "Smallest nv1 of the envelope grid")->capture_default_str();
  c_curve->add_option("--x-max", curve.x_max, "Largest nv1 of the envelope grid")->capture_default_str();
  c_curve->add_option("--method", curve.method, "envelope or parametric (gm only)")->capture_default_str();
  c_curve->add_flag("--emit-lines", curve.emit_lines, "Also write <out>.lines.csv with t,bound,d");
  add_globals(c_curve);

  SurfaceArgs surface;
  auto* c_surface = app.add_subcommand("surface", "Qubit trade-off surface (CSV s,t,nv1,nv2,nv3)");
  c_surface->add_option("--bound", surface.bound, "gm or rld")->capture_default_str();
  c_surface->add_option("--z0", surface.z0, "Bloch vector length")->capture_default_str();
  c_surface->add_option("--euler", surface.euler, "Euler angles in degrees, alpha,beta,gamma")
      ->capture_default_str();
  c_surface->add_option("--grid", surface.grid, "Simplex grid divisions")->capture_default_str();
  c_surface->add_option("--eps", surface.eps, "Distance of GM cost samples from the simplex edge")
      ->capture_default_str();
  add_globals(c_surface);

  StateIndepArgs si;
  auto* c_si = app.add_subcommand("state-indep", "State-independent qubit trade-off samples and floors");
  c_si->add_option("--z0", si.z0, "Comma-separated Bloch lengths (default 0.5,0.9,0.99,0.999,1-1e-4,1-1e-6)");
  c_si->add_option("--step", si.step, "Euler grid step in degrees")->capture_default_str();
  c_si->add_option("--costs", si.costs, "Random diagonal costs per state")->capture_default_str();
  c_si->add_flag("--literal", si.literal, "Recompute every gamma instead of reusing per (alpha, beta)");
  c_si->add_option("--resolution", si.resolution, "Two-parameter minimizer grid")->capture_default_str();
  c_si->add_option("--refine", si.refine, "Two-parameter refinement rounds")->capture_default_str();
  add_globals(c_si);

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare-measurements",
                                   "Optimal, rotated Pauli and SLD measurement clouds (CSV)");
  c_cmp->add_option("--z0", cmp.z0, "Bloch vector length")->capture_default_str();
  c_cmp->add_option("--euler", cmp.euler, "Euler angles in degrees")->capture_default_str();
  c_cmp->add_option("--samples", cmp.samples, "Points per cloud")->capture_default_str();
  c_cmp->add_option("--grid", cmp.grid, "Simplex divisions for the reference surface")
      ->capture_default_str();
  add_globals(c_cmp);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo check of the GM bound (JSON report)");
  c_sim->add_option("--config", sim.config, "Simulation JSON file")->required();
  add_globals(c_sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunRecord run;
  const auto start = std::chrono::steady_clock::now();
  try {
    int code = kExitInternal;
    if (c_qfi->parsed()) {
      run.subcommand = "qfi";
      code = run_qfi(qfi, g, run);
    } else if (c_curve->parsed()) {
      run.subcommand = "curve";
      code = run_curve(curve, g, run);
    } else if (c_surface->parsed()) {
      run.subcommand = "surface";
      code = run_surface(surface, g, run);
    } else if (c_si->parsed()) {
      run.subcommand = "state-indep";
      code = run_state_indep(si, g, run);
    } else if (c_cmp->parsed()) {
      run.subcommand = "compare-measurements";
      code = run_compare(cmp, g, run);
    } else if (c_sim->parsed()) {
      run.subcommand = "simulate";
      code = run_simulate(sim, g, run);
    }
    std::string manifest = g.manifest;
    if (manifest.empty() && run.subcommand == "simulate" && !g.out.empty()) {
      manifest = g.out + ".manifest.json";
    }
    if (!manifest.empty()) {
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_manifest(run, manifest, wall);
    }
    return code;
  } catch (const Error& e) {
    std::cerr << "qest: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "qest: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
