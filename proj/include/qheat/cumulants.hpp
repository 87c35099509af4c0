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

#include <span>
#include <vector>

#include "qheat/model.hpp"

namespace qheat {

/// Mean heat at time tau: hbar_omega (u e^{beta1} - v - 1) / (e^{beta1} - 1).
double mean_heat(const ModelParams& params);

/// Heat variance at time tau:
///   hbar_omega^2 [u(u+1) e^{2 beta1} + (1 - u(2v+3) + v) e^{beta1} + v^2 + v] / (e^{beta1} - 1)^2.
double variance_heat(const ModelParams& params);

/// Stationary mean (hbar_omega / 2) [coth(beta2 / 2) - coth(beta1 / 2)].
double stationary_mean_heat(const ModelParams& params);

/// Stationary variance
///   hbar_omega^2 [e^{b1+2b2} + e^{2b1+b2} - 4 e^{b1+b2} + e^{b1} + e^{b2}]
///     / ((e^{b1} - 1)^2 (e^{b2} - 1)^2).
double stationary_variance_heat(const ModelParams& params);

struct FiniteDifferenceCumulants {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance from central differences of G at mu = 0, evaluated in
/// long double with steps h and h/2 (in mu hbar_omega units) and one
/// Richardson extrapolation level.
FiniteDifferenceCumulants finite_difference_cumulants(const ModelParams& params, double step = 1e-4);

struct CumulantOptions {
  double step = 1e-4;
  double tolerance = 1e-7;
  bool cross_check = true;
};

/// Closed-form cumulants on an ascending tau grid, in units of hbar_omega
/// and hbar_omega^2. `relaxation_constant` is C = hbar_omega |n1 - n2| with
/// mean(tau) - mean_inf = -C' e^{-tau} exactly, |C'| = C.
struct CumulantTrace {
  std::vector<double> tau_grid;
  std::vector<double> mean;
  std::vector<double> variance;
  double mean_inf = 0.0;
  double variance_inf = 0.0;
  double relaxation_constant = 0.0;
  double max_cross_check_residual = 0.0;
};

/// Throws std::invalid_argument for a non-ascending grid and CumulantMismatch
/// when the closed forms and the differentiated G disagree beyond tolerance.
CumulantTrace cumulant_trace(const ModelParams& params, std::span<const double> tau_grid,
                             const CumulantOptions& options = {});

}  // namespace qheat
