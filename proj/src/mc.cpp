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

#include "qest/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qest/error.hpp"
#include "qest/parallel.hpp"

namespace qest {

namespace {

// Pairwise (cascade) summation of term(i) over [begin, end).
template <typename T, typename Term>
T pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin <= 8) {
    T acc = term(begin);
    for (std::size_t i = begin + 1; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  T left = pairwise_sum<T>(begin, mid, term);
  left += pairwise_sum<T>(mid, end, term);
  return left;
}

std::vector<RVector> part_probabilities(const SimConfig& config, const NumericPolicy& policy) {
  std::vector<RVector> out;
  for (const auto& part : config.measurement.parts()) {
    RVector p = part.probabilities(config.model.rho0());
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (p[k] < -policy.prob_floor) {
        std::ostringstream os;
        os << "outcome probability " << p[k] << " is negative";
        raise(ErrorKind::BadDistribution, os.str());
      }
      p[k] = std::max(p[k], 0.0);
    }
    if (std::abs(p.sum() - 1.0) > policy.povm_tol) {
      std::ostringstream os;
      os << "outcome probabilities sum to " << p.sum();
      raise(ErrorKind::BadDistribution, os.str());
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Multinomial draw as a chain of conditional binomials.
void draw_multinomial(std::mt19937_64& rng, long long n, const RVector& p, long long* out) {
  long long remaining = n;
  double mass = 1.0;
  const Eigen::Index last = p.size() - 1;
  for (Eigen::Index k = 0; k < last; ++k) {
    long long x = 0;
    if (remaining > 0 && p[k] > 0.0) {
      const double q = std::clamp(p[k] / mass, 0.0, 1.0);
      x = std::binomial_distribution<long long>(remaining, q)(rng);
    }
    out[k] = x;
    remaining -= x;
    mass -= p[k];
  }
  out[last] = remaining;
}

Counts sample_trial(const SimConfig& config, const std::vector<RVector>& probs,
                    const std::vector<long long>& copies, int trial) {
  std::mt19937_64 rng(substream_seed(config.seed, static_cast<std::uint64_t>(trial)));
  std::size_t total = 0;
  for (const auto& p : probs) total += static_cast<std::size_t>(p.size());
  Counts counts(total, 0);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    draw_multinomial(rng, copies[k], probs[k], counts.data() + offset);
    offset += static_cast<std::size_t>(probs[k].size());
  }
  return counts;
}

}  // namespace

void SimConfig::validate() const {
  if (n_copies < 100) {
    raise(ErrorKind::InvalidArgument, "n_copies must be at least 100; got " + std::to_string(n_copies));
  }
  if (n_trials < 10) {
    raise(ErrorKind::InvalidArgument, "n_trials must be at least 10; got " + std::to_string(n_trials));
  }
  for (const auto& part : measurement.parts()) {
    if (part.dim() != model.dim()) {
      raise(ErrorKind::InvalidArgument, "measurement and model dimensions differ");
    }
  }
}

std::vector<long long> allocate_copies(const std::vector<double>& weights, long long n_copies) {
  if (weights.empty()) raise(ErrorKind::BadWeights, "no mixture weights");
  std::vector<long long> out(weights.size());
  long long used = 0;
  std::size_t largest = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    out[k] = static_cast<long long>(std::floor(weights[k] * static_cast<double>(n_copies)));
    used += out[k];
    if (weights[k] > weights[largest]) largest = k;
  }
  out[largest] += n_copies - used;
  return out;
}

std::vector<Counts> sample_outcomes(const SimConfig& config, const NumericPolicy& policy) {
  config.validate();
  const auto probs = part_probabilities(config, policy);
  const auto copies = allocate_copies(config.measurement.weights(), config.n_copies);
  std::vector<Counts> out(static_cast<std::size_t>(config.n_trials));
  parallel_for(out.size(), config.threads, [&](std::size_t t) {
    out[t] = sample_trial(config, probs, copies, static_cast<int>(t));
  });
  return out;
}

LinearEstimator::LinearEstimator(const StatisticalModel& model, const Povm& povm,
                                 const NumericPolicy& policy) {
  fisher_ = fisher_info(model, povm, policy);
  try {
    fisher_inv_ = inv_psd(fisher_, policy);
  } catch (const Error& e) {
    raise(ErrorKind::SingularFisher, std::string("measurement Fisher information: ") + e.what());
  }
  const int k_params = model.num_params();
  weights_ = RMatrix::Zero(k_params, povm.size());
  RVector numer(k_params);
  for (int k = 0; k < povm.size(); ++k) {
    const double p = (povm.element(k) * model.rho0()).trace().real();
    if (p < policy.prob_floor) continue;
    for (int i = 0; i < k_params; ++i) numer[i] = (povm.element(k) * model.deriv(i)).trace().real();
    weights_.col(k) = fisher_inv_ * numer / p;
  }
}

RVector LinearEstimator::estimate(const Counts& counts) const {
  if (static_cast<Eigen::Index>(counts.size()) != weights_.cols()) {
    raise(ErrorKind::InvalidArgument, "count vector does not match the POVM");
  }
  long long n = 0;
  RVector c(weights_.cols());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    c[static_cast<Eigen::Index>(k)] = static_cast<double>(counts[k]);
    n += counts[k];
  }
  if (n <= 0) raise(ErrorKind::InvalidArgument, "no counts");
  return weights_ * c / static_cast<double>(n);
}

RVector linear_estimator(const StatisticalModel& model, const Povm& povm, const Counts& counts,
                         const NumericPolicy& policy) {
  return LinearEstimator(model, povm, policy).estimate(counts);
}

EstimationResult estimate(const SimConfig& config, const NumericPolicy& policy) {
  config.validate();
  const Povm povm = mix(config.measurement, policy);
  const LinearEstimator estimator(config.model, povm, policy);
  const auto probs = part_probabilities(config, policy);
  const auto copies = allocate_copies(config.measurement.weights(), config.n_copies);

  const auto n = static_cast<std::size_t>(config.n_trials);
  const Eigen::Index k_params = config.model.num_params();
  RMatrix estimates(static_cast<Eigen::Index>(n), k_params);
  parallel_for(n, config.threads, [&](std::size_t t) {
    const Counts counts = sample_trial(config, probs, copies, static_cast<int>(t));
    estimates.row(static_cast<Eigen::Index>(t)) = estimator.estimate(counts).transpose();
  });

  EstimationResult result;
  result.n_effective = config.n_trials;
  result.mean_estimate = pairwise_sum<RVector>(0, n, [&](std::size_t t) -> RVector {
                           return estimates.row(static_cast<Eigen::Index>(t)).transpose();
                         }) /
                         static_cast<double>(n);
  const RMatrix scatter = pairwise_sum<RMatrix>(0, n, [&](std::size_t t) -> RMatrix {
    const RVector x =
        estimates.row(static_cast<Eigen::Index>(t)).transpose() - result.mean_estimate;
    return x * x.transpose();
  });
  result.empirical_covariance =
      hermitian_part(RMatrix(scatter * static_cast<double>(config.n_copies) /
                             static_cast<double>(n - 1)));
  result.estimates = std::move(estimates);
  result.fisher_inverse = estimator.fisher_inverse();
  return result;
}

CostReport cost_report(const SimConfig& config, const CostMatrix& g, bool require_attainment,
                       double rel_tol, const NumericPolicy& policy) {
  if (g.dim() != config.model.num_params()) {
    raise(ErrorKind::InvalidArgument, "cost matrix does not match the model");
  }
  const EstimationResult res = estimate(config, policy);
  const QfiBundle bundle = qfi_bundle(config.model, policy);

  const auto n = static_cast<std::size_t>(res.n_effective);
  const double scale = static_cast<double>(config.n_copies);
  std::vector<double> y(n);
  for (std::size_t t = 0; t < n; ++t) {
    const RVector x =
        res.estimates.row(static_cast<Eigen::Index>(t)).transpose() - res.mean_estimate;
    y[t] = scale * x.dot(g.matrix() * x);
  }
  const double y_sum = pairwise_sum<double>(0, n, [&](std::size_t t) { return y[t]; });
  const double y_mean = y_sum / static_cast<double>(n);
  const double y_var = pairwise_sum<double>(0, n, [&](std::size_t t) {
                         return (y[t] - y_mean) * (y[t] - y_mean);
                       }) /
                       static_cast<double>(n - 1);

  CostReport r;
  r.bound = gm_bound(bundle, g, config.model.dim(), policy).value;
  r.prediction = (res.fisher_inverse * g.matrix()).trace();
  r.empirical = (res.empirical_covariance * g.matrix()).trace();
  r.stderr_ = std::sqrt(y_var / static_cast<double>(n));
  r.relative_error = (r.empirical - r.bound) / r.bound;
  r.n_copies = config.n_copies;
  r.n_trials = config.n_trials;
  r.seed = config.seed;
  r.attains = std::abs(r.relative_error) <= rel_tol;
  r.respects_bound = r.empirical >= r.bound - 3.0 * r.stderr_;
  r.pass = r.respects_bound && (!require_attainment || r.attains);
  return r;
}

MixtureSpec optimal_gm_mixture(const StatisticalModel& model, const CostMatrix& g,
                               const NumericPolicy& policy) {
  const QfiBundle bundle = qfi_bundle(model, policy);
  const RMatrix target = inv_psd(optimal_covariance(bundle, g, model.dim(), policy), policy);
  return construct_gm_measurement(model, target, policy);
}

CostReport verify_gm_attainability(double z0, const CostMatrix& g, long long n_copies,
                                   int n_trials, std::uint64_t seed, int threads,
                                   const NumericPolicy& policy) {
  const RMatrix& m = g.matrix();
  if (m.rows() != 3 || (m - RMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() > 0.0) {
    raise(ErrorKind::InvalidArgument, "attainability check needs a diagonal 3x3 cost");
  }
  const StatisticalModel model = qubit_model(z0, Mat3::Identity(), policy);
  SimConfig config{model, optimal_gm_mixture(model, g, policy), n_copies, n_trials, seed, threads};
  return cost_report(config, g, true, 0.05, policy);
}

}  // namespace qest
