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

#include "qheat/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qheat/charfn.hpp"
#include "qheat/errors.hpp"

namespace qheat {

// The closed forms are evaluated after dividing numerator and denominator by
// the highest power of e^{beta1}, so large beta never overflows.

double mean_heat(const ModelParams& params) {
  validate(params);
  const auto pair = relaxation_pair<double>(params);
  if (pair.at_origin()) return 0.0;
  const double q = std::exp(-params.beta1);
  return params.hbar_omega * (pair.u - pair.one_plus_v() * q) / -std::expm1(-params.beta1);
}

double variance_heat(const ModelParams& params) {
  validate(params);
  const auto pair = relaxation_pair<double>(params);
  if (pair.at_origin()) return 0.0;
  const double u = pair.u;
  const double v = pair.v;
  const double q = std::exp(-params.beta1);
  const double one_minus_q = -std::expm1(-params.beta1);
  const double numerator = u * (u + 1.0) + (1.0 - u * (2.0 * v + 3.0) + v) * q + v * pair.one_plus_v() * q * q;
  return params.hbar_omega * params.hbar_omega * numerator / (one_minus_q * one_minus_q);
}

double stationary_mean_heat(const ModelParams& params) {
  validate(params);
  return 0.5 * params.hbar_omega *
         (1.0 / std::tanh(params.beta2 / 2.0) - 1.0 / std::tanh(params.beta1 / 2.0));
}

double stationary_variance_heat(const ModelParams& params) {
  validate(params);
  const double q1 = std::exp(-params.beta1);
  const double q2 = std::exp(-params.beta2);
  const double d1 = -std::expm1(-params.beta1);
  const double d2 = -std::expm1(-params.beta2);
  const double numerator = q1 + q2 - 4.0 * q1 * q2 + q1 * q2 * q2 + q1 * q1 * q2;
  return params.hbar_omega * params.hbar_omega * numerator / (d1 * d1 * d2 * d2);
}

FiniteDifferenceCumulants finite_difference_cumulants(const ModelParams& params, double step) {
  validate(params);
  using Real = long double;
  using Complex = std::complex<Real>;
  const auto pair = relaxation_pair<Real>(params);
  const Real beta1 = params.beta1;
  auto g = [&](Real x) { return charfn_value(pair, beta1, Complex(x, 0)); };

  // <Q> = -i G'(0), <Q^2> = -G''(0); both differences have O(h^2) error.
  auto first = [&](Real h) { return ((g(h) - g(-h)) / (2 * h)).imag(); };
  auto second = [&](Real h) { return -((g(h) - Real(2) + g(-h)) / (h * h)).real(); };
  const Real h = step;
  const Real m1 = (4 * first(h / 2) - first(h)) / 3;
  const Real m2 = (4 * second(h / 2) - second(h)) / 3;
  const double scale = params.hbar_omega;
  return {static_cast<double>(m1) * scale, static_cast<double>(m2 - m1 * m1) * scale * scale};
}

CumulantTrace cumulant_trace(const ModelParams& params, std::span<const double> tau_grid,
                             const CumulantOptions& options) {
  validate(params);
  if (tau_grid.empty()) throw std::invalid_argument("tau grid is empty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] >= 0.0) || std::isinf(tau_grid[i])) {
      throw std::invalid_argument("tau grid values must be finite and >= 0");
    }
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) {
      throw std::invalid_argument("tau grid must be strictly ascending");
    }
  }
  CumulantTrace trace;
  trace.tau_grid.assign(tau_grid.begin(), tau_grid.end());
  trace.mean_inf = stationary_mean_heat(params);
  trace.variance_inf = stationary_variance_heat(params);
  trace.relaxation_constant =
      params.hbar_omega * std::abs(thermal_occupation(params.beta1) - thermal_occupation(params.beta2));

  ModelParams at = params;
  for (double tau : tau_grid) {
    at.tau = tau;
    const double mean = mean_heat(at);
    const double variance = variance_heat(at);
    trace.mean.push_back(mean);
    trace.variance.push_back(variance);
    if (!options.cross_check) continue;
    const auto fd = finite_difference_cumulants(at, options.step);
    const double scale = params.hbar_omega;
    const double residual = std::max(std::abs(fd.mean - mean) / scale,
                                     std::abs(fd.variance - variance) / (scale * scale));
    trace.max_cross_check_residual = std::max(trace.max_cross_check_residual, residual);
    if (residual > options.tolerance) {
      throw NumericError(ErrorKind::CumulantMismatch,
                         "closed form vs differentiated G differ by " + show(residual) +
                             " at tau = " + show(tau));
    }
  }
  return trace;
}

}  // namespace qheat
