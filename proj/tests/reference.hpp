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
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

// Reference quantities built independently of the library: a dense
// matrix exponential of the damping generator and plain thermal sums.
namespace qheat::testing {

inline double bose(double beta) { return 1.0 / (std::exp(beta) - 1.0); }

// Fock populations obey dp_m/dtau = (nbar+1)[(m+1)p_{m+1} - m p_m]
//                                  + nbar[m p_{m-1} - (m+1)p_m]
// on dim levels with a reflecting top level.
inline Eigen::MatrixXd damping_generator(double nbar, int dim) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m < dim; ++m) {
    const double down = (nbar + 1.0) * m;
    const double up = m + 1 < dim ? nbar * (m + 1) : 0.0;
    L(m, m) -= down + up;
    if (m > 0) L(m - 1, m) += down;
    if (m + 1 < dim) L(m + 1, m) += up;
  }
  return L;
}

inline Eigen::MatrixXd reference_transition(double beta2, double tau, int dim = 90) {
  return (damping_generator(bose(beta2), dim) * tau).exp();
}

// Naive long double evaluation of the alternating closed form.
inline long double naive_transition(int m, int n, double beta2, double tau) {
  const long double nbar = 1.0L / std::expm1((long double)beta2);
  const long double decay = std::exp(-(long double)tau);
  const long double u = nbar * (1.0L - decay);
  const long double v = nbar - (nbar + 1.0L) * decay;
  long double sum = 0.0L;
  for (int j = 0; j <= std::min(m, n); ++j) {
    const long double c = std::exp(std::lgamma((long double)(m + n - j + 1)) -
                                   std::lgamma((long double)(j + 1)) -
                                   std::lgamma((long double)(m - j + 1)) -
                                   std::lgamma((long double)(n - j + 1)));
    sum += c * std::pow(u, m - j) * std::pow(-v, j) * std::pow(1.0L + v, n - j) /
           std::pow(1.0L + u, m + n + 1 - j);
  }
  return sum;
}

// P(k) = sum_n p_n X_{n+k,n} with p_n thermal at beta1.
inline Eigen::VectorXd reference_heat(double beta1, double beta2, double tau, int k_max,
                                      int dim = 90) {
  const Eigen::MatrixXd X = reference_transition(beta2, tau, dim);
  Eigen::VectorXd P = Eigen::VectorXd::Zero(2 * k_max + 1);
  for (int n = 0; n < dim; ++n) {
    const double pn = -std::expm1(-beta1) * std::exp(-beta1 * n);
    for (int m = 0; m < dim; ++m) {
      const int k = m - n;
      if (k >= -k_max && k <= k_max) P(k + k_max) += pn * X(m, n);
    }
  }
  return P;
}

// Long-time law as a double sum over independent thermal initial and final states.
inline double stationary_mass(double beta1, double beta2, int k, int terms = 400) {
  double s = 0.0;
  for (int n = 0; n < terms; ++n) {
    const int m = n + k;
    if (m < 0) continue;
    s += -std::expm1(-beta1) * std::exp(-beta1 * n) * -std::expm1(-beta2) * std::exp(-beta2 * m);
  }
  return s;
}

inline std::complex<double> reference_charfn(double beta1, double beta2, double tau, double mu,
                                             int k_max = 80) {
  const Eigen::VectorXd P = reference_heat(beta1, beta2, tau, k_max, 2 * k_max);
  std::complex<double> g = 0.0;
  for (int k = -k_max; k <= k_max; ++k) g += P(k + k_max) * std::polar(1.0, mu * k);
  return g;
}

}  // namespace qheat::testing
