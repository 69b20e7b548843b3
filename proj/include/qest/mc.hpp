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

#include <cstdint>
#include <string>
#include <vector>

#include "qest/bounds.hpp"
#include "qest/matcore.hpp"
#include "qest/measurements.hpp"
#include "qest/models.hpp"

namespace qest {

/// One simulated experiment: n_trials independent runs of n_copies
/// measurements each. Mixture parts are measured on deterministic shares of
/// the copies.
struct SimConfig {
  StatisticalModel model;
  MixtureSpec measurement;
  long long n_copies = 100000;
  int n_trials = 500;
  std::uint64_t seed = 42;
  int threads = 1;

  /// n_copies >= 100, n_trials >= 10, matching dimensions.
  void validate() const;
};

/// floor(w_k N) copies per part; the remainder goes to the largest weight
/// (lowest index on ties).
std::vector<long long> allocate_copies(const std::vector<double>& weights, long long n_copies);

/// Outcome counts of one trial, indexed like the elements of mix(measurement).
using Counts = std::vector<long long>;

/// Counts for every trial. Trial k draws from its own generator seeded by
/// (seed, k), so results do not depend on the thread count.
std::vector<Counts> sample_outcomes(const SimConfig& config,
                                    const NumericPolicy& policy = default_policy());

/// Locally unbiased linear inversion around the reference point:
/// theta = F^{-1} score, score_i = sum_k counts_k Tr(M_k d_i) / (N Tr(M_k rho0)).
class LinearEstimator {
 public:
  LinearEstimator(const StatisticalModel& model, const Povm& povm,
                  const NumericPolicy& policy = default_policy());

  RVector estimate(const Counts& counts) const;
  const RMatrix& fisher() const { return fisher_; }
  const RMatrix& fisher_inverse() const { return fisher_inv_; }

 private:
  RMatrix fisher_;
  RMatrix fisher_inv_;
  RMatrix weights_;  // K x outcomes: F^{-1} Tr(M_k d_i) / Tr(M_k rho0)
};

RVector linear_estimator(const StatisticalModel& model, const Povm& povm, const Counts& counts,
                         const NumericPolicy& policy = default_policy());

struct EstimationResult {
  RMatrix empirical_covariance;  // N times the sample covariance of the estimates
  RVector mean_estimate;
  int n_effective = 0;
  RMatrix estimates;             // n_trials x K
  RMatrix fisher_inverse;
};

/// Simulates and estimates every trial. Sums over trials are pairwise.
EstimationResult estimate(const SimConfig& config, const NumericPolicy& policy = default_policy());

struct CostReport {
  double bound = 0.0;           // gm_bound(G)
  double prediction = 0.0;      // Tr(F^{-1} G) of the simulated measurement
  double empirical = 0.0;       // Tr(N cov G)
  double stderr_ = 0.0;         // Monte-Carlo standard error of `empirical`
  double relative_error = 0.0;  // (empirical - bound) / bound
  long long n_copies = 0;
  int n_trials = 0;
  std::uint64_t seed = 0;
  bool attains = false;         // |relative_error| <= tolerance
  bool respects_bound = false;  // empirical >= bound - 3 stderr
  bool pass = false;
  std::string estimator = "linear_inversion";
};

/// Empirical rescaled cost of the configured measurement against the GM bound.
/// When require_attainment is set, pass also needs |relative_error| <= rel_tol.
CostReport cost_report(const SimConfig& config, const CostMatrix& g, bool require_attainment,
                       double rel_tol = 0.05, const NumericPolicy& policy = default_policy());

/// Mixture attaining the GM bound for cost g: construct_gm_measurement applied
/// to the inverse optimal covariance.
MixtureSpec optimal_gm_mixture(const StatisticalModel& model, const CostMatrix& g,
                               const NumericPolicy& policy = default_policy());

/// Aligned qubit at z0, diagonal cost g: simulate the optimal mixture and
/// compare the empirical cost with the GM bound.
CostReport verify_gm_attainability(double z0, const CostMatrix& g, long long n_copies,
                                   int n_trials, std::uint64_t seed, int threads = 1,
                                   const NumericPolicy& policy = default_policy());

}  // namespace qest
