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

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "qheat/model.hpp"

namespace qheat {

/// Probability masses on the heat lattice Q = k hbar_omega, k in [-k_max, k_max].
/// Q is the final minus the initial oscillator energy, so Q > 0 means the
/// oscillator absorbed energy from the bath.
struct HeatDistribution {
  double hbar_omega = 1.0;
  int k_max = 0;
  Eigen::VectorXd masses;     ///< masses(k + k_max)
  std::optional<double> tau;  ///< empty for stationary closed forms
  double truncation_error = 0.0;
  double clamped_mass = 0.0;  ///< total |rounding negatives| set to zero
  std::string source;

  double mass(int k) const {
    return (k < -k_max || k > k_max) ? 0.0 : masses(k + k_max);
  }
  double heat(int k) const { return k * hbar_omega; }
  double total() const;
  /// Raw moment sum_k (k hbar_omega)^order P_k.
  double moment(int order) const;
  double mean() const { return moment(1); }
  double variance() const;
  /// sum_k |P_k - P'_k| / 2 over the union of both supports.
  double total_variation(const HeatDistribution& other) const;
};

/// Allocates an all-zero distribution on [-k_max, k_max].
HeatDistribution make_distribution(int k_max, double hbar_omega, std::optional<double> tau,
                                   std::string source);

/// Smallest k with max(e^{-beta1 k}, e^{-beta2 k}) < 1e-14, at least 8.
int default_k_max(const ModelParams& params);

/// Geometric decay ratios of the finite-time masses: P(k+1)/P(k) for k >= 0
/// and P(-k-1)/P(-k) for k >= 0. They are the inverse poles of G in the
/// variable s = exp(i mu hbar_omega) and give the truncation certificate.
struct LatticeDecay {
  double positive = 0.0;
  double negative = 0.0;
};
LatticeDecay lattice_decay(const ModelParams& params);

struct InversionOptions {
  double tail_tolerance = 1e-13;     ///< max mass allowed at |k| = k_max
  double residue_tolerance = 1e-10;  ///< max discarded imaginary part
  double negative_tolerance = 1e-12;
};

/// Finite-time distribution as the Fourier coefficients of G over one period
/// 2 pi / hbar_omega, by the trapezoid rule on `quadrature_points` nodes.
/// Requires quadrature_points >= 4 k_max. Throws AliasingDetected if the
/// edge masses exceed the tail tolerance and InversionResidue if the
/// imaginary parts are not negligible.
HeatDistribution invert_charfn(const ModelParams& params, int k_max, int quadrature_points,
                               const InversionOptions& options = {});

/// Convenience overload with k_max = default_k_max and 4 k_max nodes.
HeatDistribution invert_charfn(const ModelParams& params);

/// Stationary two-sided exponential law
///   P_k = A e^{-beta2 k} (k >= 0),  A e^{beta1 k} (k < 0),
///   A = (1 - e^{-beta1})(1 - e^{-beta2}) / (1 - e^{-beta1 - beta2}),
/// with the k = 0 peak counted once.
HeatDistribution asymptotic_distribution(const ModelParams& params, int k_max);

/// Equal-temperature law P_k = tanh(beta/2) e^{-beta |k|}.
HeatDistribution isothermal_distribution(double beta, int k_max, double hbar_omega = 1.0);

/// High-temperature continuous density
///   beta1 beta2 / (beta1 + beta2) e^{-beta2 Q} (Q >= 0),  e^{beta1 Q} (Q < 0),
/// in physical units (beta_i / hbar_omega per energy).
struct ClassicalDensity {
  double beta1 = 1.0;  ///< dimensionless beta1 hbar_omega
  double beta2 = 1.0;
  double hbar_omega = 1.0;

  double operator()(double heat) const;
  double mean() const;
  double variance() const;
};
ClassicalDensity classical_distribution(const ModelParams& params);

/// Three-peak law on k in {-1, 0, 1} with weights proportional to
/// {e^{-beta1}, 1, e^{-beta2}}. Meaningful when both beta are large.
HeatDistribution low_temperature_distribution(const ModelParams& params);

}  // namespace qheat
