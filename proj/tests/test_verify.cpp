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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qheat/distribution.hpp"
#include "qheat/errors.hpp"
#include "qheat/verify.hpp"

namespace {

using namespace qheat::verify;
using qheat::make_params;

TEST(Tolerances, StrictIsTenfoldTighter) {
  const auto d = tolerance_table(ToleranceProfile::Default);
  const auto s = tolerance_table(ToleranceProfile::Strict);
  EXPECT_DOUBLE_EQ(s.transition_oracle, d.transition_oracle / 10);
  EXPECT_DOUBLE_EQ(s.charfn_symmetry, d.charfn_symmetry / 10);
  EXPECT_DOUBLE_EQ(s.normalization, d.normalization / 10);
}

TEST(FluctuationCheck, AsymptoticLawSatisfiesIt) {
  const auto p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const auto r = check_fluctuation_theorem(qheat::asymptotic_distribution(p, 20), 1.5, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.lattice_points.size(), 20u);
}

TEST(FluctuationCheck, WrongTemperatureFails) {
  const auto p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const auto r = check_fluctuation_theorem(qheat::asymptotic_distribution(p, 20), 1.4, 1e-12);
  EXPECT_FALSE(r.pass);
}

TEST(FluctuationCheck, NeedsSupport) {
  auto d = qheat::make_distribution(2, 1.0, 1.0, "test");
  d.masses << 0.0, 0.5, 0.0, 0.5, 0.0;
  EXPECT_THROW(check_fluctuation_theorem(d, 0.0, 1e-12), qheat::NumericError);
}

TEST(SymmetryCheck, Passes) {
  const std::vector<double> mus{-1.0, 0.3, 2.0};
  EXPECT_TRUE(check_symmetry(make_params(1.0, 3.0, 0.5), mus, 1e-12).pass);
}

TEST(Suite, NamesAreUnique) {
  auto names = check_names();
  EXPECT_GE(names.size(), 20u);
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
}

TEST(Suite, SingleCheckSelection) {
  SuiteConfig config;
  config.selected = {"charfn_symmetry"};
  const auto report = run_suite(config);
  ASSERT_EQ(report.results.size(), 1u);
  EXPECT_EQ(report.results[0].check, "charfn_symmetry");
  EXPECT_EQ(report.results[0].criterion, 4);
  EXPECT_TRUE(report.all_passed());
  const auto j = report.to_json();
  for (const char* key : {"check", "params", "residual", "tolerance", "pass", "seconds"}) {
    EXPECT_TRUE(j["checks"][0].contains(key)) << key;
  }
}

TEST(Suite, UnknownNameIsUsageError) {
  SuiteConfig config;
  config.selected = {"no_such_check"};
  EXPECT_THROW(run_suite(config), std::invalid_argument);
}

}  // namespace
