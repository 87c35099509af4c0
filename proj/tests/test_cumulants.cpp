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
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qheat/cumulants.hpp"
#include "qheat/distribution.hpp"
#include "qheat/errors.hpp"
#include "reference.hpp"

namespace {

using qheat::make_params;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Moments {
  double mean;
  double variance;
};

Moments reference_moments(double b1, double b2, double tau, int k_max = 60) {
  const Eigen::VectorXd P = qheat::testing::reference_heat(b1, b2, tau, k_max, 2 * k_max);
  double m1 = 0.0, m2 = 0.0;
  for (int k = -k_max; k <= k_max; ++k) {
    m1 += k * P(k + k_max);
    m2 += double(k) * k * P(k + k_max);
  }
  return {m1, m2 - m1 * m1};
}

TEST(Cumulants, ClosedFormsMatchReferenceMoments) {
  for (double tau : {0.3, 1.0, 3.0}) {
    const auto ref = reference_moments(1.0, 3.0, tau);
    const auto p = make_params(1.0, 3.0, tau);
    EXPECT_NEAR(qheat::mean_heat(p), ref.mean, 1e-11) << tau;
    EXPECT_NEAR(qheat::variance_heat(p), ref.variance, 1e-10) << tau;
  }
}

TEST(Cumulants, FiniteDifferenceAtUnitTime) {
  const auto p = make_params(1.0, 3.0, 1.0);
  const auto fd = qheat::finite_difference_cumulants(p);
  EXPECT_NEAR(fd.mean, qheat::mean_heat(p), 1e-9);
  EXPECT_NEAR(fd.variance, qheat::variance_heat(p), 1e-7);
}

TEST(Cumulants, VanishAtOrigin) {
  const auto p = make_params(1.0, 3.0, 0.0);
  EXPECT_EQ(qheat::mean_heat(p), 0.0);
  EXPECT_EQ(qheat::variance_heat(p), 0.0);
}

TEST(Cumulants, StationaryValues) {
  const auto p = make_params(1.0, 2.5, kInf);
  const double n1 = qheat::testing::bose(1.0), n2 = qheat::testing::bose(2.5);
  EXPECT_NEAR(qheat::stationary_mean_heat(p), n2 - n1, 1e-15);
  EXPECT_NEAR(qheat::stationary_mean_heat(p), -0.49256, 1e-5);
  EXPECT_NEAR(qheat::stationary_variance_heat(p), n1 * (n1 + 1) + n2 * (n2 + 1), 1e-14);
  EXPECT_NEAR(qheat::mean_heat(make_params(1.0, 2.5, 20.0)), n2 - n1, 1e-8);
}

TEST(Cumulants, ScaleWithHbarOmega) {
  const auto a = make_params(1.0, 3.0, 0.8, 1.0), b = make_params(1.0, 3.0, 0.8, 3.0);
  EXPECT_NEAR(qheat::mean_heat(b), 3.0 * qheat::mean_heat(a), 1e-15);
  EXPECT_NEAR(qheat::variance_heat(b), 9.0 * qheat::variance_heat(a), 1e-14);
}

TEST(CumulantTrace, RelaxesExponentially) {
  std::vector<double> grid;
  for (int i = 0; i <= 160; ++i) grid.push_back(0.05 * i);
  const auto trace = qheat::cumulant_trace(make_params(1.0, 3.0, 0.0), grid);
  ASSERT_EQ(trace.mean.size(), grid.size());
  EXPECT_LE(trace.max_cross_check_residual, 1e-7);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(std::abs(trace.mean[i] - trace.mean_inf),
              trace.relaxation_constant * std::exp(-grid[i]) * (1 + 1e-12) + 1e-15);
    if (i > 0) EXPECT_GE(trace.variance[i], trace.variance[i - 1]);
  }
}

TEST(CumulantTrace, RejectsDescendingGrid) {
  const std::vector<double> grid{1.0, 0.5};
  EXPECT_THROW(qheat::cumulant_trace(make_params(1.0, 3.0, 0.0), grid), std::invalid_argument);
}

TEST(CumulantTrace, SinglePoint) {
  const std::vector<double> grid{2.0};
  const auto trace = qheat::cumulant_trace(make_params(1.0, 3.0, 0.0), grid);
  ASSERT_EQ(trace.variance.size(), 1u);
  EXPECT_DOUBLE_EQ(trace.variance[0], qheat::variance_heat(make_params(1.0, 3.0, 2.0)));
}

}  // namespace
