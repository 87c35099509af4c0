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

#include <vector>

#include <Eigen/Dense>

#include "qheat/distribution.hpp"
#include "qheat/model.hpp"

/// Independent ground truth: direct integration of the population sector of
/// the damped-oscillator master equation on a truncated Fock space. Nothing
/// here calls into the closed-form kernels.
namespace qheat::oracle {

/// Tridiagonal rate matrix in tau = gamma t units, with
///   dp_m/dtau = (m+1)(n+1) p_{m+1} + m n p_{m-1} - [m(n+1) + (m+1)n] p_m.
/// The top level n_max loses (n_max+1) n p_{n_max} to an absorbing sink, so
/// every column sums to zero except the last, whose deficit is `boundary_loss`.
struct BirthDeathGenerator {
  double nbar = 0.0;
  int n_max = 0;
  Eigen::VectorXd lower;  ///< lower(m) multiplies p_{m-1}; lower(0) = 0
  Eigen::VectorXd diag;
  Eigen::VectorXd upper;  ///< upper(m) multiplies p_{m+1}; upper(n_max) = 0
  double boundary_loss = 0.0;

  int dim() const { return n_max + 1; }
  Eigen::MatrixXd dense() const;
  /// out = L * p for one population vector.
  void apply(const double* p, double* out) const;
  /// Largest Gershgorin radius, a bound on the spectral radius.
  double rate_bound() const;
};

BirthDeathGenerator birth_death_generator(double nbar, int n_max);

/// Bose-Einstein law at `nbar` on levels 0..n_max (not renormalized).
Eigen::VectorXd thermal_populations(double nbar, int n_max);

struct PopulationState {
  Eigen::VectorXd p;
  double tau = 0.0;
  double leakage = 0.0;  ///< probability absorbed at the truncation boundary
};

struct StepControl {
  /// Step bound h <= step_scale / ((n + 1) n_max).
  double step_scale = 2e-2;
  bool certify = true;
  double certificate_tolerance = 1e-9;
};

/// Number of RK4 steps used to cover `duration` under `control`.
long long step_count(const BirthDeathGenerator& gen, double duration, const StepControl& control);

/// Classic fourth-order Runge-Kutta at fixed step. With `certify`, the run is
/// repeated at half the step and StepRejected is thrown if the two differ by
/// more than the certificate tolerance; the finer result is returned.
PopulationState evolve(const PopulationState& initial, const BirthDeathGenerator& gen,
                       double duration, const StepControl& control = {});

/// Several columns evolved together (one per initial state).
struct PopulationBatch {
  Eigen::MatrixXd p;
  double tau = 0.0;
  Eigen::VectorXd leakage;
};

PopulationBatch evolve(const PopulationBatch& initial, const BirthDeathGenerator& gen,
                       double duration, const StepControl& control = {});

/// Relative entropy D(p || stationary) in nats.
double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& stationary);

/// Transition matrices X(m, n) for 0 <= m, n <= n_compare at each tau in the
/// ascending list. The Fock space is padded above n_compare until the leakage
/// of every compared column is below `leakage_target`.
struct OracleTransitions {
  std::vector<double> taus;
  std::vector<Eigen::MatrixXd> matrices;
  int fock_dim = 0;
  double leakage = 0.0;
};

OracleTransitions transition_oracle(const ModelParams& params, int n_compare,
                                    const std::vector<double>& taus,
                                    const StepControl& control = {},
                                    double leakage_target = 1e-8);

/// Heat distribution by direct assembly: every Fock column n <= n_max is
/// evolved, weighted by the initial thermal law, and binned at k = m - n.
/// truncation_error covers the thermal tail above n_max and the boundary loss.
HeatDistribution heat_distribution_bruteforce(const ModelParams& params, int n_max,
                                              const StepControl& control = {},
                                              double leakage_target = 1e-8);

}  // namespace qheat::oracle
