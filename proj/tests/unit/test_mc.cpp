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

#include <random>

#include "check.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "qest/mc.hpp"
#include "qest/parallel.hpp"

using namespace qest;

namespace {

SimConfig config_for(const StatisticalModel& m, MixtureSpec spec, long long n, int trials,
                     std::uint64_t seed, int threads = 1) {
  return SimConfig{m, std::move(spec), n, trials, seed, threads};
}

MixtureSpec uniform_pauli(const StatisticalModel& m) {
  return MixtureSpec::create({1.0 / 3, 1.0 / 3, 1.0 / 3}, pauli_measurements(m));
}

double frobenius_rel_error(const SimConfig& cfg) {
  const auto r = estimate(cfg);
  return (r.empirical_covariance - r.fisher_inverse).norm() / r.fisher_inverse.norm();
}

}  // namespace

TEST_SUITE("mc") {
  TEST_CASE("config validation") {
    const auto m = qubit_model(0.7);
    CHECK_QEST_ERROR(config_for(m, uniform_pauli(m), 10, 100, 1).validate(), ErrorKind::InvalidArgument);
    CHECK_QEST_ERROR(config_for(m, uniform_pauli(m), 1000, 5, 1).validate(), ErrorKind::InvalidArgument);
    CHECK_NOTHROW(config_for(m, uniform_pauli(m), 100, 10, 1).validate());
  }

  TEST_CASE("copy allocation") {
    const auto a = allocate_copies({1.0 / 3, 1.0 / 3, 1.0 / 3}, 100000);
    CHECK(a == std::vector<long long>{33334, 33333, 33333});
    const auto b = allocate_copies({0.2, 0.5, 0.3}, 101);
    CHECK(b == std::vector<long long>{20, 51, 30});
    const auto c = allocate_copies({0.0, 1.0}, 7);
    CHECK(c == std::vector<long long>{0, 7});
  }

  TEST_CASE("per-part counts follow the allocation") {
    const auto m = qubit_model(0.7);
    const auto cfg = config_for(m, uniform_pauli(m), 100000, 20, 9);
    for (const auto& counts : sample_outcomes(cfg)) {
      REQUIRE(counts.size() == 6);
      for (int p = 0; p < 3; ++p) {
        const long long part = counts[2 * p] + counts[2 * p + 1];
        CHECK(std::abs(part - 100000 / 3) <= 1);
      }
    }
  }

  TEST_CASE("P_z frequencies") {
    const auto m = qubit_model(0.7);
    const auto cfg = config_for(m, MixtureSpec::single(projective_bloch(Vec3::UnitZ())), 100000, 20, 3);
    const double sigma = std::sqrt(0.85 * 0.15 / 100000.0);
    for (const auto& counts : sample_outcomes(cfg)) {
      CHECK(counts[0] + counts[1] == 100000);
      CHECK(std::abs(counts[0] / 100000.0 - 0.85) <= 3.5 * sigma);
    }
  }

  TEST_CASE("determinism across runs and thread counts") {
    const auto m = qubit_model(0.7);
    const auto a = estimate(config_for(m, uniform_pauli(m), 5000, 64, 123, 1));
    const auto b = estimate(config_for(m, uniform_pauli(m), 5000, 64, 123, 1));
    const auto c = estimate(config_for(m, uniform_pauli(m), 5000, 64, 123, 4));
    CHECK(a.estimates == b.estimates);
    CHECK(a.estimates == c.estimates);
    CHECK(a.empirical_covariance == c.empirical_covariance);
    CHECK(a.mean_estimate == c.mean_estimate);
    const auto d = estimate(config_for(m, uniform_pauli(m), 5000, 64, 124, 1));
    CHECK(a.estimates != d.estimates);
  }

  TEST_CASE("substream seeds are distinct") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 1000; ++k) seeds.push_back(substream_seed(42, k));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    CHECK(unit_uniform(~0ULL) < 1.0);
  }

  TEST_CASE("linear estimator algebra") {
    const auto m = qubit_model(0.7);
    const Povm povm = mix(uniform_pauli(m));
    const LinearEstimator est(m, povm);
    // Exact expected counts give zero.
    const RVector p = povm.probabilities(m.rho0());
    Counts exact;
    const long long n = 300000;
    for (int k = 0; k < povm.size(); ++k) exact.push_back(std::llround(p(k) * n));
    CHECK(est.estimate(exact).cwiseAbs().maxCoeff() < 1e-12);
    // Single-parameter z model, two outcomes.
    const auto mz = StatisticalModel::create(m.rho0(), {oracle::sz()});
    const LinearEstimator ez(mz, projective_bloch(Vec3::UnitZ()));
    for (long long plus : {85000LL, 84000LL, 86123LL}) {
      const Counts c{plus, 100000 - plus};
      CHECK(ez.estimate(c)(0) == doctest::Approx(oracle::two_outcome_estimate(0.7, plus, 100000)).epsilon(1e-12));
    }
    CHECK(ez.fisher()(0, 0) == doctest::Approx(4.0 / 0.51).epsilon(1e-12));
    // Fisher matrix singular for a single projective measurement on three parameters.
    CHECK_QEST_ERROR(LinearEstimator(m, projective_bloch(Vec3::UnitZ())), ErrorKind::SingularFisher);
  }

  TEST_CASE("empirical covariance approaches F^-1 with Wishart-scale error") {
    // The sample covariance of n trials has RMS Frobenius error
    // sqrt(((Tr S)^2 + |S|_F^2) / (n - 1)); at 200 trials that is about 10%
    // of |F^-1|, so a fixed 5% band is not a meaningful test. Four RMS
    // widths bound the miss probability by 1/16 (Markov on the square).
    const auto m = qubit_model(0.7);
    const RMatrix finv = inv_psd(fisher_info(m, mix(uniform_pauli(m))));
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const auto cfg = config_for(m, uniform_pauli(m), 100000, 200, seed);
      const double tol = 4.0 * oracle::wishart_frobenius_rms(finv, 200) / finv.norm();
      CHECK(frobenius_rel_error(cfg) <= tol);
    }
  }

  TEST_CASE("empirical covariance within 5% of F^-1 once the trial count supports it") {
    const auto m = qubit_model(0.7);
    CHECK(frobenius_rel_error(config_for(m, uniform_pauli(m), 100000, 20000, 42, 2)) <= 0.05);
  }

  TEST_CASE("covariance error shrinks like 1/sqrt(n_trials)") {
    const auto m = qubit_model(0.7);
    const RMatrix finv = inv_psd(fisher_info(m, mix(uniform_pauli(m))));
    double mean_err[3] = {0, 0, 0};
    const int trials[3] = {50, 200, 800};
    const int seeds = 20;
    for (int k = 0; k < 3; ++k) {
      for (int s = 0; s < seeds; ++s)
        mean_err[k] += frobenius_rel_error(config_for(m, uniform_pauli(m), 100000, trials[k], 1000 + s)) / seeds;
      const double rms = oracle::wishart_frobenius_rms(finv, trials[k]) / finv.norm();
      CHECK(mean_err[k] <= 1.5 * rms);
      CHECK(mean_err[k] >= 0.3 * rms);
    }
    // Quadrupling the trials halves the error.
    CHECK(mean_err[0] / mean_err[1] == doctest::Approx(2.0).epsilon(0.35));
    CHECK(mean_err[1] / mean_err[2] == doctest::Approx(2.0).epsilon(0.35));
  }

  TEST_CASE("GM attainability and bound respect") {
    const auto g = CostMatrix::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto r = verify_gm_attainability(0.7, g, 100000, 500, 42, 2);
    CHECK(r.pass);
    CHECK(std::abs(r.relative_error) <= 0.05);
    CHECK(r.empirical >= r.bound - 3 * r.stderr_);
    CHECK(r.bound == doctest::Approx(oracle::comp_gm(0.7, 1.0 / 3, 1.0 / 3, 1.0 / 3)).epsilon(1e-12));
    CHECK(r.prediction == doctest::Approx(r.bound).epsilon(1e-7));
    CHECK(r.estimator == "linear_inversion");

    // At z0 = 0 the per-trial cost has relative sd sqrt(2/3), so 500 trials
    // give a 3.7% standard error; the 5% band is checked at 4000 trials.
    const auto r0 = verify_gm_attainability(0.0, g, 100000, 500, 42);
    CHECK(r0.bound == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::abs(r0.empirical - 0.75) <= 3 * r0.stderr_);
    const auto r1 = verify_gm_attainability(0.0, g, 100000, 4000, 42);
    CHECK(std::abs(r1.empirical - 0.75) / 0.75 <= 0.05);

    // Sub-optimal uniform Pauli mixture, generic cost: respects the bound.
    const auto m = qubit_model(0.7);
    const auto gen = CostMatrix::diagonal({0.6, 0.1, 0.3});
    const auto rep = cost_report(config_for(m, uniform_pauli(m), 100000, 500, 42), gen, false);
    CHECK(rep.respects_bound);
    CHECK(rep.pass);
    CHECK(rep.prediction > rep.bound);
  }

  TEST_CASE("bad distributions are rejected") {
    const auto m = qubit_model(0.7);
    // A POVM of the wrong dimension.
    const Povm p3 = Povm::create({CMatrix(CMatrix::Identity(3, 3))});
    CHECK_THROWS_AS(config_for(m, MixtureSpec::single(p3), 1000, 20, 1).validate(), qest::Error);
  }
}
