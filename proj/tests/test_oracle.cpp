// Copyright 2026 The qheat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qheat/distribution.hpp"
#include "qheat/errors.hpp"
#include "qheat/oracle.hpp"
#include "reference.hpp"

namespace {

using namespace qheat::oracle;
using qheat::make_params;

TEST(Generator, MatchesReferenceInterior) {
  const auto gen = birth_death_generator(0.4, 12);
  const Eigen::MatrixXd L = gen.dense();
  const Eigen::MatrixXd R = qheat::testing::damping_generator(0.4, 13);
  // rows and columns below the top level are identical
  EXPECT_LT((L.topLeftCorner(12, 12) - R.topLeftCorner(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Generator, ThermalStateIsStationary) {
  const auto gen = birth_death_generator(0.3, 40);
  const Eigen::VectorXd p = thermal_populations(0.3, 40);
  Eigen::VectorXd out(p.size());
  gen.apply(p.data(), out.data());
  EXPECT_LT(out.head(30).cwiseAbs().maxCoeff(), 1e-12);
  for (int m = 0; m < 10; ++m) EXPECT_NEAR(p(m + 1) / p(m), 0.3 / 1.3, 1e-15);
}

TEST(Evolve, GroundStateRelaxesToThermal) {
  const auto gen = birth_death_generator(0.2, 30);
  PopulationState s;
  s.p = Eigen::VectorXd::Zero(31);
  s.p(0) = 1.0;
  const auto out = evolve(s, gen, 25.0);
  const Eigen::VectorXd th = thermal_populations(0.2, 30);
  EXPECT_LT((out.p - th).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(out.tau, 25.0, 1e-12);
}

TEST(Evolve, MatchesMatrixExponentialColumns) {
  const double nbar = qheat::testing::bose(1.5);
  const auto gen = birth_death_generator(nbar, 60);
  PopulationBatch b;
  b.p = Eigen::MatrixXd::Identity(61, 6);
  const auto out = evolve(b, gen, 0.8);
  const Eigen::MatrixXd X = qheat::testing::reference_transition(1.5, 0.8, 90);
  EXPECT_LT((out.p.topRows(20) - X.topLeftCorner(20, 6)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Evolve, CertificateRejectsCoarseSteps) {
  const auto gen = birth_death_generator(2.0, 40);
  PopulationState s;
  s.p = Eigen::VectorXd::Zero(41);
  s.p(20) = 1.0;
  StepControl coarse;
  coarse.step_scale = 40.0;
  coarse.certificate_tolerance = 1e-14;
  try {
    evolve(s, gen, 1.0, coarse);
    FAIL();
  } catch (const qheat::NumericError& e) {
    EXPECT_EQ(e.kind(), qheat::ErrorKind::StepRejected);
  }
}

TEST(Evolve, RelativeEntropyDecreases) {
  const double nbar = 0.5;
  const auto gen = birth_death_generator(nbar, 40);
  const Eigen::VectorXd th = thermal_populations(nbar, 40);
  PopulationState s;
  s.p = Eigen::VectorXd::Zero(41);
  s.p(6) = 1.0;
  double last = relative_entropy(s.p, th);
  for (int i = 0; i < 10; ++i) {
    s = evolve(s, gen, 0.3);
    const double now = relative_entropy(s.p, th);
    EXPECT_LE(now, last + 1e-14);
    last = now;
  }
}

TEST(TransitionOracle, PadsUntilLeakageTarget) {
  const auto out = transition_oracle(make_params(1.0, 3.0, 0.0), 10, {0.5, 2.0});
  EXPECT_GT(out.fock_dim, 11);
  EXPECT_LE(out.leakage, 1e-8);
  ASSERT_EQ(out.matrices.size(), 2u);
  const Eigen::MatrixXd X = qheat::testing::reference_transition(3.0, 2.0);
  EXPECT_LT((out.matrices[1] - X.topLeftCorner(11, 11)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(BruteForce, MatchesReferenceHeatLaw) {
  const auto d = heat_distribution_bruteforce(make_params(1.0, 3.0, 0.7), 28);
  const Eigen::VectorXd ref = qheat::testing::reference_heat(1.0, 3.0, 0.7, d.k_max);
  for (int k = -d.k_max; k <= d.k_max; ++k) EXPECT_NEAR(d.mass(k), ref(k + d.k_max), 1e-9);
  EXPECT_GT(d.truncation_error, 0.0);
}

TEST(BruteForce, RejectsInfiniteTime) {
  EXPECT_THROW(heat_distribution_bruteforce(
                   make_params(1.0, 3.0, std::numeric_limits<double>::infinity()), 10),
               std::invalid_argument);
}

}  // namespace
