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

#pragma once

#include <cmath>
#include <limits>

namespace qheat {

/// Physical configuration. All inverse temperatures are the dimensionless
/// products beta * hbar * omega; `tau` is the dimensionless contact time
/// gamma * t and may be +infinity for the stationary limit. `hbar_omega`
/// only rescales reported heat values.
struct ModelParams {
  double beta1 = 1.0;
  double beta2 = 1.0;
  double tau = 0.0;
  double hbar_omega = 1.0;

  bool stationary() const { return std::isinf(tau); }
  double delta_beta() const { return beta2 - beta1; }
};

/// Throws std::invalid_argument unless beta1, beta2, hbar_omega > 0 and tau >= 0.
void validate(const ModelParams& params);

/// Builds and validates a parameter set.
ModelParams make_params(double beta1, double beta2, double tau, double hbar_omega = 1.0);

/// Bose-Einstein occupation 1 / (e^beta - 1).
template <typename Scalar>
Scalar thermal_occupation(Scalar beta) {
  using std::expm1;
  return Scalar(1) / expm1(beta);
}

/// Relaxation parameters of the damped oscillator at time tau,
///   u = n2 (1 - e^-tau),  v = n2 - (n2 + 1) e^-tau,
/// with n2 the bath occupation. `decay` carries e^-tau = u - v exactly so
/// kernels never form that difference by subtraction.
template <typename Scalar>
struct RelaxationPair {
  Scalar u{0};
  Scalar v{-1};
  Scalar decay{1};
  Scalar growth{0};
  Scalar nbar{0};

  /// 1 + v, evaluated without cancellation as (n2 + 1)(1 - e^-tau).
  Scalar one_plus_v() const { return (nbar + 1) * growth; }
  bool at_origin() const { return decay == Scalar(1); }
};

template <typename Scalar = double>
RelaxationPair<Scalar> relaxation_pair(Scalar beta2, Scalar tau) {
  using std::exp;
  using std::expm1;
  RelaxationPair<Scalar> pair;
  pair.nbar = thermal_occupation(beta2);
  if (tau == Scalar(0)) {
    pair.u = 0;
    pair.v = -1;
    pair.decay = 1;
    pair.growth = 0;
    return pair;
  }
  const bool infinite = std::isinf(tau);
  pair.decay = infinite ? Scalar(0) : exp(-tau);
  pair.growth = infinite ? Scalar(1) : -expm1(-tau);
  pair.u = pair.nbar * pair.growth;
  pair.v = pair.nbar - (pair.nbar + 1) * pair.decay;
  return pair;
}

template <typename Scalar = double>
RelaxationPair<Scalar> relaxation_pair(const ModelParams& params) {
  return relaxation_pair<Scalar>(Scalar(params.beta2), Scalar(params.tau));
}

}  // namespace qheat
