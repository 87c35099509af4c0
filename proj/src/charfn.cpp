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

#include "qheat/charfn.hpp"

#include "qheat/summation.hpp"

namespace qheat {

std::complex<double> symmetry_partner(const ModelParams& params, std::complex<double> mu) {
  const double shift = (params.beta2 - params.beta1) / params.hbar_omega;
  return -mu - std::complex<double>(0.0, shift);
}

std::complex<double> stationary_charfn(const ModelParams& params, std::complex<double> mu) {
  const std::complex<double> x = mu * params.hbar_omega;
  const std::complex<double> i(0.0, 1.0);
  const double b1 = params.beta1;
  const double b2 = params.beta2;
  const double both = std::exp(-b1 - b2);
  const double numerator = 1.0 - std::exp(-b1) - std::exp(-b2) + both;
  const std::complex<double> denominator =
      1.0 - std::exp(-(b2 - i * x)) - std::exp(-(b1 + i * x)) + both;
  return numerator / denominator;
}

CharFnSample<double> charfn_from_matrix(const TransitionMatrix& tm, const ModelParams& params,
                                        std::complex<double> mu) {
  const std::complex<double> x = mu * params.hbar_omega;
  const double q = std::exp(-params.beta1);
  const double one_minus_q = -std::expm1(-params.beta1);
  const std::complex<double> i(0.0, 1.0);
  CompensatedSum<std::complex<double>> acc;
  for (int n = 0; n <= tm.n_max; ++n) {
    const double weight = one_minus_q * std::pow(q, n);
    for (int m = 0; m <= tm.n_max; ++m) {
      acc.add(weight * tm.entries(m, n) * std::exp(i * x * static_cast<double>(m - n)));
    }
  }
  return {mu, acc.value(), params.tau};
}

double charfn_matrix_truncation_bound(const TransitionMatrix& tm, const ModelParams& params) {
  const double q = std::exp(-params.beta1);
  const double one_minus_q = -std::expm1(-params.beta1);
  double bound = std::pow(q, tm.n_max + 1);
  for (int n = 0; n <= tm.n_max; ++n) {
    bound += one_minus_q * std::pow(q, n) * tm.column_leakage(n);
  }
  return bound;
}

}  // namespace qheat
