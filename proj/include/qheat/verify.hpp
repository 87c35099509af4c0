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
#include <string>
#include <vector>

#include "json.hpp"

#include "qheat/distribution.hpp"
#include "qheat/model.hpp"

namespace qheat::verify {

/// Per-check tolerances. The strict profile divides every entry by 10.
struct ToleranceTable {
  double transition_oracle = 1e-6;
  double transition_oracle_seconds = 10.0;
  double path_equivalence = 1e-10;
  double column_stochasticity = 1e-10;
  double identity_at_origin = 1e-15;
  double stationary_columns = 1e-8;
  double nonnegativity = 1e-12;
  double charfn_symmetry = 1e-12;
  double charfn_conjugate = 1e-15;
  double charfn_stationary = 1e-12;
  double charfn_matrix = 1e-8;
  double fluctuation_asymptotic = 1e-12;
  double fluctuation_finite = 1e-8;
  double fluctuation_mass_floor_exact = 1e-300;
  double fluctuation_mass_floor_inverted = 1e-8;
  double cumulant_moments = 1e-8;
  double cumulant_finite_difference = 1e-7;
  double stationary_limits = 1e-7;
  double quoted_stationary_mean = 1e-5;
  double normalization = 1e-10;
  double fourier_pair = 1e-10;
  double asymptotic_inversion = 1e-10;
  double classical_limit_relative = 1e-2;
  double bruteforce_total_variation = 1e-6;
  double bruteforce_mean = 1e-6;
  double bruteforce_stationary = 1e-7;
  double generator_stationary = 1e-12;
  double oracle_ground_state = 1e-7;
  double suite_seconds = 60.0;

  static ToleranceTable default_profile() { return {}; }
  static ToleranceTable strict_profile();
};

enum class ToleranceProfile { Default, Strict };
ToleranceTable tolerance_table(ToleranceProfile profile);

struct CheckResult {
  std::string check;
  int criterion = 0;  ///< acceptance criterion number, 0 for module invariants
  nlohmann::json params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;

  nlohmann::json to_json() const;
};

struct FluctuationReport {
  std::vector<int> lattice_points;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Log-ratio residuals ln P(k) - ln P(-k) + delta_beta k for every k > 0 with
/// both masses above `mass_floor`. `delta_beta` is (beta2 - beta1) hbar_omega
/// (dimensionless). Throws InsufficientSupport with fewer than 3 pairs.
FluctuationReport check_fluctuation_theorem(const HeatDistribution& dist, double delta_beta,
                                            double tol, double mass_floor = 1e-300);

struct SymmetryReport {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// max |G(-mu - i delta_beta) - G(mu)| over real samples (mu in inverse energy units).
SymmetryReport check_symmetry(const ModelParams& params, std::span<const double> mu_samples,
                              double tol);

struct SuiteConfig {
  ToleranceProfile profile = ToleranceProfile::Default;
  std::vector<std::string> selected;  ///< empty runs every check
  unsigned seed = 20181;
};

struct SuiteReport {
  std::vector<CheckResult> results;
  double seconds = 0.0;
  std::string profile;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Registered check names in execution order.
std::vector<std::string> check_names();

/// Runs the selected checks. Unknown names throw std::invalid_argument before
/// anything runs; numeric failures inside a check are recorded as failed
/// entries rather than propagated.
SuiteReport run_suite(const SuiteConfig& config = {});

}  // namespace qheat::verify
