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
#include <complex>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "qheat/charfn.hpp"
#include "qheat/errors.hpp"
#include "qheat/transition.hpp"
#include "reference.hpp"

namespace {

using cd = std::complex<double>;
using qheat::make_params;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(CharFn, UnityAtOrigin) {
  EXPECT_EQ(qheat::charfn(make_params(1.0, 3.0, 0.7), cd(0.0)).value, cd(1.0));
  EXPECT_EQ(qheat::charfn(make_params(1.0, 3.0, 0.0), cd(1.3)).value, cd(1.0));
}

TEST(CharFn, MatchesReferenceFourierSum) {
  for (double tau : {0.3, 1.0, 4.0}) {
    for (double mu : {-2.0, 0.4, 1.1, 3.0}) {
      const cd ref = qheat::testing::reference_charfn(1.0, 3.0, tau, mu);
      const cd got = qheat::charfn(make_params(1.0, 3.0, tau), cd(mu)).value;
      EXPECT_LT(std::abs(got - ref), 1e-11) << tau << " " << mu;
    }
  }
}

TEST(CharFn, HermitianOnRealAxis) {
  const auto p = make_params(1.2, 0.8, 0.9);
  for (double mu : {0.1, 0.7, 2.9}) {
    const cd a = qheat::charfn(p, cd(mu)).value;
    const cd b = qheat::charfn(p, cd(-mu)).value;
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-15);
  }
}

TEST(CharFn, ExchangeSymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> draw(-3.0, 3.0);
  for (const auto& p : {make_params(1.0, 3.0, 0.5), make_params(2.0, 2.0, 1.5),
                        make_params(2.5, 1.0, 3.0)}) {
    for (int i = 0; i < 20; ++i) {
      const cd mu(draw(rng), 0.0);
      const cd partner = qheat::symmetry_partner(p, mu);
      EXPECT_NEAR(partner.imag(), -(p.beta2 - p.beta1), 1e-15);
      EXPECT_LT(std::abs(qheat::charfn(p, partner).value - qheat::charfn(p, mu).value), 1e-12);
    }
  }
}

TEST(CharFn, StationaryClosedForm) {
  const auto p = make_params(1.0, 2.5, kInf);
  for (double mu : {0.0, 0.5, 2.0}) {
    cd ref = 0.0;
    for (int k = -60; k <= 60; ++k) {
      ref += qheat::testing::stationary_mass(1.0, 2.5, k) * std::polar(1.0, mu * k);
    }
    EXPECT_LT(std::abs(qheat::stationary_charfn(p, cd(mu)) - ref), 1e-13);
    EXPECT_LT(std::abs(qheat::charfn(p, cd(mu)).value - ref), 1e-13);
  }
}

TEST(CharFn, FromMatrixAgrees) {
  const auto p = make_params(1.0, 3.0, 1.0);
  const auto tm = qheat::build_transition_matrix(p);
  for (double mu : {0.3, 1.7}) {
    const auto a = qheat::charfn_from_matrix(tm, p, cd(mu)).value;
    const auto b = qheat::charfn(p, cd(mu)).value;
    EXPECT_LT(std::abs(a - b), qheat::charfn_matrix_truncation_bound(tm, p) + 1e-13);
  }
}

TEST(CharFn, OutsideStripIsDomainError) {
  const auto p = make_params(1.0, 3.0, 1.0);
  try {
    qheat::charfn(p, cd(0.0, -10.0));
    FAIL();
  } catch (const qheat::NumericError& e) {
    EXPECT_EQ(e.kind(), qheat::ErrorKind::DomainError);
  }
  EXPECT_NO_THROW(qheat::charfn(p, cd(0.2, -0.5)));
}

TEST(CharFn, HbarOmegaScalesArgument) {
  const auto a = qheat::charfn(make_params(1.0, 3.0, 1.0, 2.0), cd(0.35)).value;
  const auto b = qheat::charfn(make_params(1.0, 3.0, 1.0, 1.0), cd(0.7)).value;
  EXPECT_LT(std::abs(a - b), 1e-15);
}

}  // namespace
