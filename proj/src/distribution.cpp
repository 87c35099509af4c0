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

#include "qheat/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheat/charfn.hpp"
#include "qheat/errors.hpp"
#include "qheat/summation.hpp"

namespace qheat {

double HeatDistribution::total() const { return compensated_total(masses); }

double HeatDistribution::moment(int order) const {
  CompensatedSum<double> acc;
  for (int k = -k_max; k <= k_max; ++k) {
    acc.add(std::pow(heat(k), order) * mass(k));
  }
  return acc.value();
}

double HeatDistribution::variance() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

double HeatDistribution::total_variation(const HeatDistribution& other) const {
  const int reach = std::max(k_max, other.k_max);
  CompensatedSum<double> acc;
  for (int k = -reach; k <= reach; ++k) acc.add(std::abs(mass(k) - other.mass(k)));
  return 0.5 * acc.value();
}

HeatDistribution make_distribution(int k_max, double hbar_omega, std::optional<double> tau,
                                   std::string source) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  HeatDistribution dist;
  dist.hbar_omega = hbar_omega;
  dist.k_max = k_max;
  dist.masses = Eigen::VectorXd::Zero(2 * k_max + 1);
  dist.tau = tau;
  dist.source = std::move(source);
  return dist;
}

int default_k_max(const ModelParams& params) {
  const double rate = std::min(params.beta1, params.beta2);
  const int k = static_cast<int>(std::floor(14.0 * std::log(10.0) / rate)) + 1;
  return std::max(k, 8);
}

LatticeDecay lattice_decay(const ModelParams& params) {
  const auto pair = relaxation_pair<double>(params);
  if (pair.at_origin()) return {0.0, 0.0};
  // Poles of G in s solve u s^2 - (1 + u + v q) s + (1 + v) q = 0.
  const double q = std::exp(-params.beta1);
  const double b = 1.0 + pair.u + pair.v * q;
  const double c = pair.one_plus_v() * q;
  const double root = b + std::sqrt(std::max(0.0, b * b - 4.0 * pair.u * c));
  return {2.0 * pair.u / root, 2.0 * c / root};
}

HeatDistribution invert_charfn(const ModelParams& params, int k_max, int quadrature_points,
                               const InversionOptions& options) {
  validate(params);
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (quadrature_points < 4 * k_max) {
    throw std::invalid_argument("quadrature_points must be >= 4 * k_max");
  }
  const int nodes = quadrature_points;
  const auto pair = relaxation_pair<double>(params);
  if (pair.at_origin()) {
    HeatDistribution delta = make_distribution(k_max, params.hbar_omega, 0.0, "exact");
    delta.masses(k_max) = 1.0;
    return delta;
  }

  std::vector<double> cosines(nodes);
  std::vector<double> sines(nodes);
  for (int t = 0; t < nodes; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / nodes;
    cosines[t] = std::cos(angle);
    sines[t] = std::sin(angle);
  }
  std::vector<std::complex<double>> samples(nodes);
  for (int j = 0; j < nodes; ++j) {
    samples[j] = charfn_value(pair, params.beta1, std::complex<double>(2.0 * std::numbers::pi * j / nodes, 0.0));
  }

  std::optional<double> tau;
  if (!params.stationary()) tau = params.tau;
  HeatDistribution dist = make_distribution(k_max, params.hbar_omega, tau, "exact");
  for (int k = -k_max; k <= k_max; ++k) {
    CompensatedSum<std::complex<double>> acc;
    for (int j = 0; j < nodes; ++j) {
      long long t = (static_cast<long long>(j) * k) % nodes;
      if (t < 0) t += nodes;
      // e^{-2 pi i j k / nodes}
      acc.add(samples[j] * std::complex<double>(cosines[t], -sines[t]));
    }
    const std::complex<double> coefficient = acc.value() / static_cast<double>(nodes);
    if (std::abs(coefficient.imag()) > options.residue_tolerance) {
      throw NumericError(ErrorKind::InversionResidue,
                         "imaginary part " + show(coefficient.imag()) + " at k = " +
                             std::to_string(k));
    }
    double p = coefficient.real();
    if (p < 0.0) {
      if (p < -options.negative_tolerance) {
        throw NumericError(ErrorKind::NegativeProbability,
                           "mass " + show(p) + " at k = " + std::to_string(k));
      }
      dist.clamped_mass += -p;
      p = 0.0;
    }
    dist.masses(k + k_max) = p;
  }

  const double edge = std::max(dist.mass(k_max), dist.mass(-k_max));
  if (edge > options.tail_tolerance) {
    throw NumericError(ErrorKind::AliasingDetected,
                       "edge mass " + show(edge) + " at |k| = " + std::to_string(k_max) +
                           " exceeds tail tolerance; increase k_max");
  }
  const LatticeDecay decay = lattice_decay(params);
  auto tail = [](double edge_mass, double ratio) {
    return ratio <= 0.0 ? 0.0 : edge_mass * ratio / (1.0 - ratio);
  };
  dist.truncation_error =
      tail(dist.mass(k_max), decay.positive) + tail(dist.mass(-k_max), decay.negative);
  return dist;
}

HeatDistribution invert_charfn(const ModelParams& params) {
  const int k_max = default_k_max(params);
  return invert_charfn(params, k_max, 4 * k_max);
}

HeatDistribution asymptotic_distribution(const ModelParams& params, int k_max) {
  validate(params);
  const double b1 = params.beta1;
  const double b2 = params.beta2;
  const double prefactor = std::expm1(-b1) * std::expm1(-b2) / -std::expm1(-b1 - b2);
  HeatDistribution dist = make_distribution(k_max, params.hbar_omega, std::nullopt, "asymptotic");
  for (int k = -k_max; k <= k_max; ++k) {
    const double rate = k >= 0 ? b2 : b1;
    dist.masses(k + k_max) = prefactor * std::exp(-rate * std::abs(k));
  }
  dist.truncation_error = prefactor * (std::exp(-b2 * (k_max + 1)) / -std::expm1(-b2) +
                                       std::exp(-b1 * (k_max + 1)) / -std::expm1(-b1));
  return dist;
}

HeatDistribution isothermal_distribution(double beta, int k_max, double hbar_omega) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const double peak = std::tanh(beta / 2.0);
  HeatDistribution dist = make_distribution(k_max, hbar_omega, std::nullopt, "isothermal");
  for (int k = -k_max; k <= k_max; ++k) {
    dist.masses(k + k_max) = peak * std::exp(-beta * std::abs(k));
  }
  dist.truncation_error = 2.0 * peak * std::exp(-beta * (k_max + 1)) / -std::expm1(-beta);
  return dist;
}

double ClassicalDensity::operator()(double heat) const {
  const double b1 = beta1 / hbar_omega;
  const double b2 = beta2 / hbar_omega;
  const double norm = b1 * b2 / (b1 + b2);
  return heat >= 0.0 ? norm * std::exp(-b2 * heat) : norm * std::exp(b1 * heat);
}

double ClassicalDensity::mean() const {
  const double b1 = beta1 / hbar_omega;
  const double b2 = beta2 / hbar_omega;
  const double norm = b1 * b2 / (b1 + b2);
  return norm * (1.0 / (b2 * b2) - 1.0 / (b1 * b1));
}

double ClassicalDensity::variance() const {
  const double b1 = beta1 / hbar_omega;
  const double b2 = beta2 / hbar_omega;
  const double norm = b1 * b2 / (b1 + b2);
  const double second = norm * (2.0 / (b2 * b2 * b2) + 2.0 / (b1 * b1 * b1));
  const double m = mean();
  return second - m * m;
}

ClassicalDensity classical_distribution(const ModelParams& params) {
  validate(params);
  return {params.beta1, params.beta2, params.hbar_omega};
}

HeatDistribution low_temperature_distribution(const ModelParams& params) {
  validate(params);
  const double down = std::exp(-params.beta1);
  const double up = std::exp(-params.beta2);
  const double norm = 1.0 + down + up;
  HeatDistribution dist = make_distribution(1, params.hbar_omega, std::nullopt, "low-temperature");
  dist.masses << down / norm, 1.0 / norm, up / norm;
  return dist;
}

}  // namespace qheat
