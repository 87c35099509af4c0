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

#include "qheat/errors.hpp"
#include "qheat/model.hpp"
#include "qheat/transition.hpp"

namespace qheat {

/// One evaluation of the heat characteristic function G(mu, tau) =
/// sum_k P(k hbar_omega) exp(i mu k hbar_omega). `mu` is in inverse energy
/// units; with hbar_omega = 1 it is the dimensionless mu hbar_omega.
template <typename Scalar = double>
struct CharFnSample {
  std::complex<Scalar> mu;
  std::complex<Scalar> value;
  Scalar tau{0};
};

/// Whether the double sum over (n, m) converges absolutely at a dimensionless
/// argument with imaginary part `imag_x`. With r = exp(-imag_x) the
/// conditions are r u < 1 + u (final-state sum) and
/// e^{-beta1} (1 + v - v r) < r (1 + u - u r) (initial-state sum).
/// Always true for real arguments.
template <typename Scalar>
bool in_convergence_strip(const RelaxationPair<Scalar>& pair, Scalar beta1, Scalar imag_x) {
  using std::exp;
  if (imag_x == Scalar(0)) return true;
  const Scalar r = exp(-imag_x);
  const Scalar q = exp(-beta1);
  const Scalar final_side = 1 + pair.u - pair.u * r;
  if (!(final_side > Scalar(0))) return false;
  return q * (1 + pair.v - pair.v * r) < r * final_side;
}

/// Closed-form characteristic function at dimensionless argument x = mu hbar_omega.
/// Written as
///   G = 1 / (1 - (s - 1)(u - (1 + v) e^{-beta1} / s) / (1 - e^{-beta1})),  s = e^{ix},
/// which is algebraically the rational-exponential form of the resummed
/// double series and returns exactly 1 at x = 0. No domain check.
template <typename Scalar>
std::complex<Scalar> charfn_value(const RelaxationPair<Scalar>& pair, Scalar beta1,
                                  std::complex<Scalar> x) {
  using std::cos;
  using std::exp;
  using std::expm1;
  using std::sin;
  using Complex = std::complex<Scalar>;
  if (x == Complex(0)) return Complex(1);
  const Scalar a = x.real();
  const Scalar b = x.imag();
  const Scalar r = exp(-b);
  const Scalar half_sin = sin(a / 2);
  // s - 1 = e^{-b} cos a - 1 + i e^{-b} sin a without cancellation near x = 0.
  const Complex s_minus_1(expm1(-b) * cos(a) - 2 * half_sin * half_sin, r * sin(a));
  const Complex s = s_minus_1 + Scalar(1);
  const Scalar q = exp(-beta1);
  const Scalar one_minus_q = -expm1(-beta1);
  const Complex ratio = s_minus_1 * (pair.u - pair.one_plus_v() * q / s) / one_minus_q;
  return Scalar(1) / (Scalar(1) - ratio);
}

/// Checked evaluation at mu (inverse energy units). Throws DomainError when a
/// complex mu lies outside the convergence strip.
template <typename Scalar = double>
CharFnSample<Scalar> charfn(const ModelParams& params, std::complex<Scalar> mu) {
  const auto pair = relaxation_pair<Scalar>(params);
  const std::complex<Scalar> x = mu * Scalar(params.hbar_omega);
  const Scalar beta1 = Scalar(params.beta1);
  if (!in_convergence_strip(pair, beta1, x.imag())) {
    throw NumericError(ErrorKind::DomainError,
                       "Im(mu hbar_omega) = " + std::to_string(static_cast<double>(x.imag())) +
                           " lies outside the convergence strip");
  }
  return {mu, charfn_value(pair, beta1, x), Scalar(params.tau)};
}

/// Stationary closed form
///   (1 - e^{-b1} - e^{-b2} + e^{-b1-b2}) / (1 - e^{-(b2 - ix)} - e^{-(b1 + ix)} + e^{-b1-b2}),
/// x = mu hbar_omega. Independent of the finite-tau expression.
std::complex<double> stationary_charfn(const ModelParams& params, std::complex<double> mu);

/// Argument paired with mu by the exchange symmetry G(partner) = G(mu):
/// partner = -mu - i (beta2 - beta1), in inverse energy units.
std::complex<double> symmetry_partner(const ModelParams& params, std::complex<double> mu);

/// Truncated double sum sum_{n,m} X(m,n) P_n^0 exp(i mu hbar_omega (m - n)),
/// with the initial thermal law normalized over all n. The discrepancy with
/// `charfn` is bounded by the thermal tail plus the weighted column leakage.
CharFnSample<double> charfn_from_matrix(const TransitionMatrix& tm, const ModelParams& params,
                                        std::complex<double> mu);

/// Bound on |charfn_from_matrix - charfn| for real mu.
double charfn_matrix_truncation_bound(const TransitionMatrix& tm, const ModelParams& params);

}  // namespace qheat
