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

#include "qest/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qest/error.hpp"
#include "qest/geometry.hpp"

namespace qest {

namespace {

using json = nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::InvalidSpec, std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    raise(ErrorKind::InvalidSpec, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) raise(ErrorKind::InvalidSpec, std::string(what) + " must be a number");
  return j.get<double>();
}

Complex complex_entry(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  raise(ErrorKind::InvalidSpec, "matrix entries must be numbers or [re, im] pairs");
}

CMatrix complex_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    raise(ErrorKind::InvalidSpec, "matrix must be a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      raise(ErrorKind::InvalidSpec, "matrix rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

StatisticalModel model_from(const json& j, const NumericPolicy& policy) {
  const json& type = field(j, "type");
  if (!type.is_string()) raise(ErrorKind::InvalidSpec, "model type must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "qubit") {
    const double z0 = number(field(j, "z0"), "z0");
    std::array<double, 3> euler{0.0, 0.0, 0.0};
    if (j.contains("euler_deg")) {
      const json& e = j.at("euler_deg");
      if (!e.is_array() || e.size() != 3) raise(ErrorKind::InvalidSpec, "euler_deg needs three angles");
      for (std::size_t i = 0; i < 3; ++i) euler[i] = number(e[i], "euler_deg entry");
    }
    return qubit_model(z0, euler_rotation_deg(euler), policy);
  }
  if (kind == "qutrit") {
    const json& k = field(j, "k");
    if (!k.is_array() || k.size() != 2) raise(ErrorKind::InvalidSpec, "k needs two eigenvalues");
    return qutrit_model(number(k[0], "k1"), number(k[1], "k2"), policy);
  }
  if (kind == "generic") {
    const CMatrix rho0 = complex_matrix(field(j, "rho0"));
    const json& d = field(j, "derivs");
    if (!d.is_array() || d.empty()) raise(ErrorKind::InvalidSpec, "derivs must be a non-empty list");
    std::vector<CMatrix> derivs;
    for (const auto& m : d) derivs.push_back(complex_matrix(m));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      for (const auto& l : j.at("labels")) {
        if (!l.is_string()) raise(ErrorKind::InvalidSpec, "labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    }
    return StatisticalModel::create(rho0, std::move(derivs), std::move(labels), policy);
  }
  raise(ErrorKind::InvalidSpec, "unknown model type '" + kind + "'");
}

Povm povm_from(const json& j, const NumericPolicy& policy) {
  const json& list = j.is_object() ? field(j, "elements") : j;
  if (!list.is_array() || list.empty()) raise(ErrorKind::InvalidSpec, "POVM needs a list of elements");
  std::vector<CMatrix> elements;
  for (const auto& m : list) elements.push_back(complex_matrix(m));
  return Povm::create(std::move(elements), policy);
}

CostMatrix cost_from(const json& j, const NumericPolicy& policy) {
  if (!j.is_array() || j.empty()) raise(ErrorKind::InvalidSpec, "cost must be a list or a matrix");
  if (j[0].is_number()) {
    std::vector<double> w;
    for (const auto& x : j) w.push_back(number(x, "cost entry"));
    return CostMatrix::diagonal(w, policy);
  }
  const CMatrix m = complex_matrix(j);
  if (m.imag().cwiseAbs().maxCoeff() > 0.0) raise(ErrorKind::InvalidSpec, "cost matrix must be real");
  return CostMatrix::create(m.real(), policy);
}

}  // namespace

StatisticalModel model_from_json(const std::string& text, const NumericPolicy& policy) {
  return model_from(parse(text), policy);
}

Povm povm_from_json(const std::string& text, const NumericPolicy& policy) {
  return povm_from(parse(text), policy);
}

std::string povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (const auto& m : povm.elements()) elements.push_back(complex_matrix_to_json(m));
  return json{{"elements", elements}}.dump();
}

SimSetup sim_setup_from_json(const std::string& text, std::optional<std::uint64_t> seed_override,
                             int threads, const NumericPolicy& policy) {
  const json j = parse(text);
  StatisticalModel model = model_from(field(j, "model"), policy);
  CostMatrix cost = cost_from(field(j, "cost"), policy);

  auto integer = [&](const char* key, long long fallback) -> long long {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) raise(ErrorKind::InvalidSpec, std::string(key) + " must be an integer");
    return v.get<long long>();
  };
  const long long n_copies = integer("n_copies", 100000);
  const long long n_trials = integer("n_trials", 500);
  std::uint64_t seed = 42;
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      raise(ErrorKind::InvalidSpec, "seed must be a non-negative integer");
    }
    seed = s.get<std::uint64_t>();
  }
  if (seed_override) seed = *seed_override;
  if (n_trials > 1000000000LL || n_trials < 0) raise(ErrorKind::InvalidSpec, "n_trials out of range");

  const json& meas = j.contains("measurement") ? j.at("measurement") : json("optimal");
  std::optional<MixtureSpec> mixture;
  std::string kind;
  if (meas.is_string()) {
    if (meas.get<std::string>() != "optimal") {
      raise(ErrorKind::InvalidSpec, "measurement must be \"optimal\", {\"povm\":...} or {\"mixture\":...}");
    }
    kind = "optimal";
    mixture = optimal_gm_mixture(model, cost, policy);
  } else if (meas.is_object() && meas.contains("povm")) {
    kind = "povm";
    mixture = MixtureSpec::single(povm_from(meas.at("povm"), policy));
  } else if (meas.is_object() && meas.contains("mixture")) {
    kind = "mixture";
    const json& mx = meas.at("mixture");
    std::vector<double> weights;
    for (const auto& w : field(mx, "weights")) weights.push_back(number(w, "mixture weight"));
    std::vector<Povm> parts;
    for (const auto& p : field(mx, "parts")) parts.push_back(povm_from(p, policy));
    mixture = MixtureSpec::create(std::move(weights), std::move(parts), policy);
  } else {
    raise(ErrorKind::InvalidSpec, "measurement must be \"optimal\", {\"povm\":...} or {\"mixture\":...}");
  }

  SimSetup setup{SimConfig{std::move(model), std::move(*mixture), n_copies,
                           static_cast<int>(n_trials), seed, threads},
                 std::move(cost), kind};
  setup.config.validate();
  return setup;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::InvalidSpec, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qest
