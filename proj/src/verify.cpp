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

#include "qheat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qheat/charfn.hpp"
#include "qheat/cumulants.hpp"
#include "qheat/errors.hpp"
#include "qheat/oracle.hpp"
#include "qheat/transition.hpp"

namespace qheat::verify {

using nlohmann::json;

ToleranceTable ToleranceTable::strict_profile() {
  ToleranceTable t;
  for (double* field : {&t.transition_oracle, &t.path_equivalence, &t.column_stochasticity,
                        &t.identity_at_origin, &t.stationary_columns, &t.nonnegativity,
                        &t.charfn_symmetry, &t.charfn_conjugate, &t.charfn_stationary,
                        &t.charfn_matrix, &t.fluctuation_asymptotic, &t.fluctuation_finite,
                        &t.cumulant_moments, &t.cumulant_finite_difference, &t.stationary_limits,
                        &t.quoted_stationary_mean, &t.normalization, &t.fourier_pair,
                        &t.asymptotic_inversion, &t.classical_limit_relative,
                        &t.bruteforce_total_variation, &t.bruteforce_mean,
                        &t.bruteforce_stationary, &t.generator_stationary,
                        &t.oracle_ground_state}) {
    *field /= 10.0;
  }
  return t;
}

ToleranceTable tolerance_table(ToleranceProfile profile) {
  return profile == ToleranceProfile::Strict ? ToleranceTable::strict_profile()
                                             : ToleranceTable::default_profile();
}

json CheckResult::to_json() const {
  json j{{"check", check},         {"params", params}, {"residual", residual},
         {"tolerance", tolerance}, {"pass", pass},     {"seconds", seconds}};
  if (criterion > 0) j["criterion"] = criterion;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

bool SuiteReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

json SuiteReport::to_json() const {
  json checks = json::array();
  for (const auto& r : results) checks.push_back(r.to_json());
  return json{{"profile", profile}, {"passed", all_passed()}, {"seconds", seconds}, {"checks", checks}};
}

FluctuationReport check_fluctuation_theorem(const HeatDistribution& dist, double delta_beta,
                                            double tol, double mass_floor) {
  FluctuationReport report;
  report.tolerance = tol;
  for (int k = 1; k <= dist.k_max; ++k) {
    const double forward = dist.mass(k);
    const double backward = dist.mass(-k);
    if (!(forward > mass_floor && backward > mass_floor)) continue;
    const double residual = std::abs(std::log(forward) - std::log(backward) + delta_beta * k);
    report.lattice_points.push_back(k);
    report.residuals.push_back(residual);
    report.max_residual = std::max(report.max_residual, residual);
  }
  if (report.lattice_points.size() < 3) {
    throw NumericError(ErrorKind::InsufficientSupport,
                       "only " + std::to_string(report.lattice_points.size()) +
                           " lattice pairs above the mass floor");
  }
  report.pass = report.max_residual <= tol;
  return report;
}

SymmetryReport check_symmetry(const ModelParams& params, std::span<const double> mu_samples,
                              double tol) {
  SymmetryReport report;
  report.tolerance = tol;
  for (double mu : mu_samples) {
    const auto direct = charfn(params, std::complex<double>(mu, 0.0)).value;
    const auto mirrored = charfn(params, symmetry_partner(params, mu)).value;
    report.max_residual = std::max(report.max_residual, std::abs(mirrored - direct));
  }
  report.pass = report.max_residual <= tol;
  return report;
}

namespace {

const std::vector<double> kTauSet{0.1, 0.5, 1.0, 2.0, 5.0};

json params_json(const ModelParams& p) {
  json j{{"beta1", p.beta1}, {"beta2", p.beta2}, {"hbar_omega", p.hbar_omega}};
  if (p.stationary()) {
    j["tau"] = "inf";
  } else {
    j["tau"] = p.tau;
  }
  return j;
}

std::vector<double> random_mu(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& mu : out) mu = uniform(rng);
  return out;
}

// Sets residual/tolerance/pass; `ok_extra` folds in non-residual conditions.
void finish(CheckResult& r, double residual, double tolerance, bool ok_extra = true) {
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = ok_extra && residual <= tolerance;
}

using CheckFn = std::function<void(CheckResult&, const ToleranceTable&, unsigned)>;

struct CheckSpec {
  const char* name;
  int criterion;
  CheckFn run;
};

// --- transition kernel ------------------------------------------------------

void transition_oracle_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams base = make_params(1.0, 3.0, 0.0);
  const int n_max = 40;
  const auto oracle = oracle::transition_oracle(base, n_max, kTauSet);
  double worst = 0.0;
  for (std::size_t i = 0; i < kTauSet.size(); ++i) {
    ModelParams p = base;
    p.tau = kTauSet[i];
    TransitionOptions options;
    options.n_max = n_max;
    const auto tm = build_transition_matrix(p, options);
    worst = std::max(worst, (tm.entries - oracle.matrices[i]).cwiseAbs().maxCoeff());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"taus", kTauSet}, {"n_max", n_max}};
  r.detail = "runtime " + show(seconds) + " s (limit " +
             show(tol.transition_oracle_seconds) + " s), oracle Fock dim " +
             std::to_string(oracle.fock_dim) + ", oracle leakage " + show(oracle.leakage);
  finish(r, worst, tol.transition_oracle, seconds < tol.transition_oracle_seconds);
}

void path_equivalence_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const double beta2 = 3.0;
  double worst = 0.0;
  double worst_condition = 1.0;
  for (double tau : kTauSet) {
    const auto pair = relaxation_pair<double>(beta2, tau);
    for (int n = 0; n <= 30; ++n) {
      for (int m = 0; m <= 30; ++m) {
        const auto direct = transition_direct_unchecked(m, n, pair);
        const double hyper = transition_hypergeometric(m, n, pair);
        worst = std::max(worst, std::abs(direct.value - hyper));
        worst_condition = std::max(worst_condition, direct.condition);
      }
    }
  }
  r.params = {{"beta2", beta2}, {"taus", kTauSet}, {"m_max", 30}, {"n_max", 30}};
  r.detail = "largest direct-sum condition estimate " + show(worst_condition);
  finish(r, worst, tol.path_equivalence);
}

void column_stochasticity_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double worst = 0.0;
  double max_leak = 0.0;
  for (double tau : kTauSet) {
    TransitionOptions options;
    options.n_max = 40;
    const auto tm = build_transition_matrix(make_params(1.0, 3.0, tau), options);
    for (int n = 0; n <= tm.n_max; ++n) {
      const double deviation = std::abs(compensated_total(tm.entries.col(n)) - 1.0);
      worst = std::max(worst, deviation - tm.column_leakage(n));
    }
    max_leak = std::max(max_leak, tm.leakage);
  }
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"taus", kTauSet}, {"n_max", 40}};
  r.detail = "residual is max_n |sum_m X - 1| - leakage_n; largest leakage " + show(max_leak);
  finish(r, std::max(worst, 0.0), tol.column_stochasticity);
}

void identity_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const auto tm = build_transition_matrix(make_params(1.0, 3.0, 0.0));
  const double residual =
      (tm.entries - Eigen::MatrixXd::Identity(tm.n_max + 1, tm.n_max + 1)).cwiseAbs().maxCoeff();
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"tau", 0.0}, {"n_max", tm.n_max}};
  finish(r, residual, tol.identity_at_origin);
}

void stationary_columns_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 2.5, 20.0);
  const auto tm = build_transition_matrix(p);
  const double nbar = thermal_occupation(p.beta2);
  // Column n deviates from the stationary law by O(n e^{-tau}); only the
  // low columns are expected to agree to the tolerance at tau = 20.
  const int columns = 5;
  double worst = 0.0;
  for (int n = 0; n <= columns; ++n) {
    for (int m = 0; m <= tm.n_max; ++m) {
      const double bose = std::pow(nbar / (1.0 + nbar), m) / (1.0 + nbar);
      worst = std::max(worst, std::abs(tm(m, n) - bose));
    }
  }
  r.params = {{"beta1", 1.0}, {"beta2", 2.5}, {"tau", 20.0}, {"columns", columns}};
  r.detail = "columns compared with the Bose-Einstein law at beta2";
  finish(r, worst, tol.stationary_columns);
}

void nonnegativity_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double lowest = 0.0;
  for (double tau : kTauSet) {
    TransitionOptions options;
    options.n_max = 40;
    const auto tm = build_transition_matrix(make_params(1.0, 3.0, tau), options);
    lowest = std::min(lowest, tm.min_entry);
  }
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"taus", kTauSet}, {"n_max", 40}};
  finish(r, -lowest, tol.nonnegativity);
}

// --- characteristic function --------------------------------------------------

const std::vector<ModelParams>& symmetry_triples() {
  static const std::vector<ModelParams> triples{
      make_params(1.0, 3.0, 0.7), make_params(1.0, 2.5, 2.0), make_params(2.0, 2.0, 1.3)};
  return triples;
}

void charfn_symmetry_check(CheckResult& r, const ToleranceTable& tol, unsigned seed) {
  const auto mus = random_mu(seed, 20);
  double worst = 0.0;
  json triples = json::array();
  for (const auto& p : symmetry_triples()) {
    worst = std::max(worst, check_symmetry(p, mus, tol.charfn_symmetry).max_residual);
    triples.push_back(params_json(p));
  }
  r.params = {{"triples", triples}, {"samples", mus.size()}, {"seed", seed}};
  finish(r, worst, tol.charfn_symmetry);
}

void charfn_conjugate_check(CheckResult& r, const ToleranceTable& tol, unsigned seed) {
  const auto mus = random_mu(seed + 1, 20);
  double worst = 0.0;
  bool bounded = true;
  bool unit_at_zero = true;
  for (auto p : symmetry_triples()) {
    for (double tau : {0.0, p.tau, std::numeric_limits<double>::infinity()}) {
      p.tau = tau;
      unit_at_zero = unit_at_zero && charfn(p, std::complex<double>(0.0)).value == 1.0;
      for (double mu : mus) {
        const auto g = charfn(p, std::complex<double>(mu)).value;
        const auto g_neg = charfn(p, std::complex<double>(-mu)).value;
        worst = std::max(worst, std::abs(g_neg - std::conj(g)));
        bounded = bounded && std::abs(g) <= 1.0 + 1e-15;
      }
    }
  }
  r.params = {{"samples", mus.size()}, {"seed", seed + 1}};
  r.detail = std::string("|G| <= 1: ") + (bounded ? "yes" : "no") +
             ", G(0) == 1: " + (unit_at_zero ? "yes" : "no");
  finish(r, worst, tol.charfn_conjugate, bounded && unit_at_zero);
}

void charfn_stationary_check(CheckResult& r, const ToleranceTable& tol, unsigned seed) {
  const auto mus = random_mu(seed + 2, 20);
  ModelParams p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  double worst = 0.0;
  for (double mu : mus) {
    worst = std::max(worst, std::abs(charfn(p, std::complex<double>(mu)).value -
                                     stationary_charfn(p, std::complex<double>(mu))));
  }
  r.params = params_json(p);
  finish(r, worst, tol.charfn_stationary);
}

void charfn_matrix_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 3.0, 2.0);
  const auto tm = build_transition_matrix(p);
  double worst = 0.0;
  for (double mu : {0.3, 1.1, 2.9}) {
    worst = std::max(worst, std::abs(charfn_from_matrix(tm, p, mu).value - charfn(p, std::complex<double>(mu)).value));
  }
  r.params = params_json(p);
  r.detail = "truncation bound " + show(charfn_matrix_truncation_bound(tm, p));
  finish(r, worst, tol.charfn_matrix);
}

// --- fluctuation theorem -----------------------------------------------------

void fluctuation_asymptotic_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const auto dist = asymptotic_distribution(p, default_k_max(p));
  const auto report = check_fluctuation_theorem(dist, p.delta_beta(), tol.fluctuation_asymptotic,
                                                tol.fluctuation_mass_floor_exact);
  r.params = params_json(p);
  r.detail = std::to_string(report.lattice_points.size()) + " lattice pairs";
  finish(r, report.max_residual, tol.fluctuation_asymptotic);
}

void fluctuation_finite_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 3.0, 0.7);
  const auto dist = invert_charfn(p);
  const auto report = check_fluctuation_theorem(dist, p.delta_beta(), tol.fluctuation_finite,
                                                tol.fluctuation_mass_floor_inverted);
  r.params = params_json(p);
  r.detail = std::to_string(report.lattice_points.size()) + " lattice pairs with both masses above " +
             show(tol.fluctuation_mass_floor_inverted);
  finish(r, report.max_residual, tol.fluctuation_finite);
}

// --- cumulants ---------------------------------------------------------------

void cumulant_moments_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double worst = 0.0;
  for (double tau : {0.3, 1.0, 3.0}) {
    const ModelParams p = make_params(1.0, 3.0, tau);
    const auto dist = invert_charfn(p);
    worst = std::max({worst, std::abs(dist.mean() - mean_heat(p)),
                      std::abs(dist.variance() - variance_heat(p))});
  }
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"taus", {0.3, 1.0, 3.0}}};
  finish(r, worst, tol.cumulant_moments);
}

void cumulant_fd_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double worst = 0.0;
  for (double tau : {0.3, 1.0, 3.0}) {
    const ModelParams p = make_params(1.0, 3.0, tau);
    const auto fd = finite_difference_cumulants(p);
    worst = std::max({worst, std::abs(fd.mean - mean_heat(p)),
                      std::abs(fd.variance - variance_heat(p))});
  }
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"taus", {0.3, 1.0, 3.0}}, {"step", 1e-4}};
  finish(r, worst, tol.cumulant_finite_difference);
}

void stationary_limits_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double worst = 0.0;
  for (const auto& p : {make_params(1.0, 3.0, 20.0), make_params(1.0, 2.5, 20.0)}) {
    worst = std::max({worst, std::abs(mean_heat(p) - stationary_mean_heat(p)),
                      std::abs(variance_heat(p) - stationary_variance_heat(p))});
  }
  const ModelParams fig1 = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const double occupation_gap =
      thermal_occupation(fig1.beta2) - thermal_occupation(fig1.beta1);
  worst = std::max(worst, std::abs(stationary_mean_heat(fig1) - occupation_gap));
  const double quoted = -0.49256;
  const double quoted_gap = std::abs(stationary_mean_heat(fig1) - quoted);
  r.params = {{"tau", 20.0}, {"pairs", {{1.0, 3.0}, {1.0, 2.5}}}};
  r.detail = "stationary mean at (1, 2.5) = " + show(stationary_mean_heat(fig1)) +
             ", |mean - (-0.49256)| = " + show(quoted_gap);
  finish(r, worst, tol.stationary_limits, quoted_gap <= tol.quoted_stationary_mean);
}

void normalization_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<HeatDistribution> emitted;
  for (double tau : {0.0, 0.1, 0.7, 2.0, inf}) emitted.push_back(invert_charfn(make_params(1.0, 3.0, tau)));
  for (const auto& p : {make_params(1.0, 2.5, inf), make_params(2.5, 2.5, inf), make_params(0.5, 4.0, inf)}) {
    emitted.push_back(asymptotic_distribution(p, default_k_max(p)));
    emitted.push_back(low_temperature_distribution(p));
  }
  emitted.push_back(isothermal_distribution(2.5, 20));
  emitted.push_back(oracle::heat_distribution_bruteforce(make_params(1.0, 3.0, 0.1), 28));
  double worst = 0.0;
  for (const auto& d : emitted) {
    worst = std::max(worst, std::abs(d.total() - 1.0) - d.truncation_error);
  }
  r.params = {{"distributions", emitted.size()}};
  r.detail = "residual is max |sum P - 1| - truncation_error";
  finish(r, std::max(worst, 0.0), tol.normalization);
}

void fourier_pair_check(CheckResult& r, const ToleranceTable& tol, unsigned seed) {
  const ModelParams p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const auto dist = asymptotic_distribution(p, default_k_max(p));
  const auto mus = random_mu(seed + 3, 20);
  double worst = 0.0;
  for (double mu : mus) {
    CompensatedSum<std::complex<double>> acc;
    for (int k = -dist.k_max; k <= dist.k_max; ++k) {
      acc.add(dist.mass(k) * std::exp(std::complex<double>(0.0, mu * dist.heat(k))));
    }
    worst = std::max(worst, std::abs(acc.value() - stationary_charfn(p, std::complex<double>(mu))));
  }
  r.params = params_json(p);
  finish(r, worst, tol.fourier_pair);
}

void asymptotic_inversion_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const auto inverted = invert_charfn(p);
  const auto closed = asymptotic_distribution(p, inverted.k_max);
  r.params = params_json(p);
  finish(r, (inverted.masses - closed.masses).cwiseAbs().maxCoeff(), tol.asymptotic_inversion);
}

// --- properties --------------------------------------------------------------

std::vector<double> fig3_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 160; ++i) grid.push_back(0.05 * i);
  return grid;
}

void variance_monotone_check(CheckResult& r, const ToleranceTable&, unsigned) {
  const ModelParams p = make_params(1.0, 3.0, 0.0);
  CumulantOptions options;
  options.cross_check = false;
  const auto grid = fig3_grid();
  const auto trace = cumulant_trace(p, grid, options);
  double worst_drop = 0.0;
  double worst_envelope = 0.0;
  bool mean_monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      worst_drop = std::max(worst_drop, trace.variance[i - 1] - trace.variance[i]);
      mean_monotone = mean_monotone && trace.mean[i] <= trace.mean[i - 1];
    }
    const double envelope = trace.relaxation_constant * std::exp(-grid[i]);
    worst_envelope = std::max(worst_envelope, std::abs(trace.mean[i] - trace.mean_inf) - envelope * (1.0 + 1e-12));
  }
  r.params = {{"beta1", 1.0}, {"beta2", 3.0}, {"tau_grid", "0:8:0.05"}};
  r.detail = std::string("mean monotone toward stationary value: ") + (mean_monotone ? "yes" : "no") +
             ", envelope excess " + show(std::max(worst_envelope, 0.0));
  finish(r, std::max(worst_drop, 0.0), 0.0, mean_monotone && worst_envelope <= 0.0);
}

void swap_invariance_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const double inf = std::numeric_limits<double>::infinity();
  const ModelParams forward = make_params(1.0, 2.5, inf);
  const ModelParams swapped = make_params(2.5, 1.0, inf);
  const double variance_gap =
      std::abs(stationary_variance_heat(forward) - stationary_variance_heat(swapped));
  const double mean_gap = std::abs(stationary_mean_heat(forward) + stationary_mean_heat(swapped));
  r.params = {{"beta1", 1.0}, {"beta2", 2.5}, {"tau", "inf"}};
  finish(r, std::max(variance_gap, mean_gap), tol.stationary_limits);
}

void quantum_narrower_check(CheckResult& r, const ToleranceTable&, unsigned) {
  const ModelParams p = make_params(1.0, 2.5, std::numeric_limits<double>::infinity());
  const double quantum = stationary_variance_heat(p);
  const double classical = classical_distribution(p).variance();
  r.params = params_json(p);
  r.detail = "quantum " + show(quantum) + " vs classical " + show(classical);
  // residual > 0 means the quantum law is wider.
  finish(r, std::max(quantum - classical, 0.0), 0.0);
}

void classical_limit_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  double worst = 0.0;
  json pairs = json::array();
  for (const auto& p : {make_params(0.01, 0.01, std::numeric_limits<double>::infinity()),
                        make_params(0.01, 0.025, std::numeric_limits<double>::infinity())}) {
    const auto dist = asymptotic_distribution(p, default_k_max(p));
    const auto density = classical_distribution(p);
    const int reach = static_cast<int>(std::floor(5.0 / p.beta2));
    for (int k = -reach; k <= reach; ++k) {
      const double lattice = dist.mass(k) / p.hbar_omega;
      const double continuous = density(dist.heat(k));
      worst = std::max(worst, std::abs(lattice - continuous) / continuous);
    }
    pairs.push_back({p.beta1, p.beta2});
  }
  r.params = {{"pairs", pairs}, {"range", "|Q| <= 5 / beta2"}};
  finish(r, worst, tol.classical_limit_relative);
}

void low_temperature_check(CheckResult& r, const ToleranceTable&, unsigned) {
  const ModelParams p = make_params(8.0, 8.0, std::numeric_limits<double>::infinity());
  const auto three = low_temperature_distribution(p);
  const auto full = asymptotic_distribution(p, default_k_max(p));
  const double norm = full.mass(-1) + full.mass(0) + full.mass(1);
  double worst = 0.0;
  for (int k = -1; k <= 1; ++k) worst = std::max(worst, std::abs(three.mass(k) - full.mass(k) / norm));
  r.params = params_json(p);
  finish(r, worst, std::exp(-2.0 * std::min(p.beta1, p.beta2)));
}

// --- oracle ------------------------------------------------------------------

void bruteforce_agreement_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 3.0, 0.1);
  const int n_max = build_transition_matrix(p).n_max;
  const auto brute = oracle::heat_distribution_bruteforce(p, n_max);
  const auto exact = invert_charfn(p);
  const double tv = brute.total_variation(exact);
  const double mean_gap = std::abs(brute.mean() - mean_heat(p));
  r.params = params_json(p);
  r.params["n_max"] = n_max;
  r.detail = "mean gap " + show(mean_gap) + " (tolerance " +
             show(tol.bruteforce_mean) + ")";
  finish(r, tv, tol.bruteforce_total_variation, mean_gap <= tol.bruteforce_mean);
}

void bruteforce_stationary_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const ModelParams p = make_params(1.0, 3.0, 20.0);
  const int n_max = build_transition_matrix(p).n_max;
  const auto brute = oracle::heat_distribution_bruteforce(p, n_max);
  ModelParams stationary = p;
  stationary.tau = std::numeric_limits<double>::infinity();
  const auto closed = asymptotic_distribution(stationary, brute.k_max);
  r.params = params_json(p);
  r.params["n_max"] = n_max;
  finish(r, (brute.masses - closed.masses).cwiseAbs().maxCoeff(), tol.bruteforce_stationary);
}

void generator_stationary_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const double nbar = 1.0 / std::expm1(3.0);
  const auto gen = oracle::birth_death_generator(nbar, 40);
  const Eigen::VectorXd pi = oracle::thermal_populations(nbar, 40);
  Eigen::VectorXd out(pi.size());
  gen.apply(pi.data(), out.data());
  r.params = {{"beta2", 3.0}, {"n_max", 40}};
  finish(r, out.cwiseAbs().maxCoeff(), tol.generator_stationary);
}

void oracle_ground_state_check(CheckResult& r, const ToleranceTable& tol, unsigned) {
  const double beta2 = 2.5;
  const double tau = 2.0;
  const double nbar = 1.0 / std::expm1(beta2);
  const auto gen = oracle::birth_death_generator(nbar, 40);
  oracle::PopulationState state{Eigen::VectorXd::Unit(gen.dim(), 0), 0.0, 0.0};
  state = oracle::evolve(state, gen, tau);
  const double u = nbar * -std::expm1(-tau);
  double worst = 0.0;
  for (int m = 0; m < gen.dim(); ++m) {
    worst = std::max(worst, std::abs(state.p(m) - std::pow(u, m) / std::pow(1.0 + u, m + 1)));
  }
  r.params = {{"beta2", beta2}, {"tau", tau}, {"n_max", 40}};
  finish(r, worst, tol.oracle_ground_state);
}

void oracle_entropy_check(CheckResult& r, const ToleranceTable&, unsigned) {
  const double nbar = 1.0 / std::expm1(2.5);
  const auto gen = oracle::birth_death_generator(nbar, 40);
  const Eigen::VectorXd pi = oracle::thermal_populations(nbar, 40);
  oracle::PopulationBatch batch;
  batch.p = Eigen::MatrixXd::Identity(gen.dim(), 6);
  batch.leakage = Eigen::VectorXd::Zero(6);
  std::vector<double> previous(6, std::numeric_limits<double>::infinity());
  double worst_rise = 0.0;
  for (int step = 0; step < 20; ++step) {
    batch = oracle::evolve(batch, gen, 0.25);
    for (int c = 0; c < 6; ++c) {
      const double d = oracle::relative_entropy(batch.p.col(c), pi);
      if (std::isfinite(previous[c])) worst_rise = std::max(worst_rise, d - previous[c]);
      previous[c] = d;
    }
  }
  r.params = {{"beta2", 2.5}, {"columns", 6}, {"tau_grid", "0.25:5:0.25"}};
  r.detail = "relative entropy to the stationary law must not increase";
  finish(r, std::max(worst_rise, 0.0), 0.0);
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> checks{
      {"transition_oracle", 1, transition_oracle_check},
      {"path_equivalence", 2, path_equivalence_check},
      {"column_stochasticity", 3, column_stochasticity_check},
      {"charfn_symmetry", 4, charfn_symmetry_check},
      {"fluctuation_asymptotic", 5, fluctuation_asymptotic_check},
      {"fluctuation_finite", 5, fluctuation_finite_check},
      {"cumulant_moments", 6, cumulant_moments_check},
      {"cumulant_finite_difference", 6, cumulant_fd_check},
      {"stationary_limits", 7, stationary_limits_check},
      {"normalization", 8, normalization_check},
      {"variance_monotone", 9, variance_monotone_check},
      {"swap_invariance", 9, swap_invariance_check},
      {"quantum_narrower", 9, quantum_narrower_check},
      {"classical_limit", 9, classical_limit_check},
      {"identity_at_origin", 0, identity_check},
      {"stationary_columns", 0, stationary_columns_check},
      {"nonnegativity", 0, nonnegativity_check},
      {"charfn_conjugate", 0, charfn_conjugate_check},
      {"charfn_stationary", 0, charfn_stationary_check},
      {"charfn_matrix", 0, charfn_matrix_check},
      {"fourier_pair", 0, fourier_pair_check},
      {"asymptotic_inversion", 0, asymptotic_inversion_check},
      {"low_temperature", 0, low_temperature_check},
      {"bruteforce_agreement", 0, bruteforce_agreement_check},
      {"bruteforce_stationary", 0, bruteforce_stationary_check},
      {"generator_stationary", 0, generator_stationary_check},
      {"oracle_ground_state", 0, oracle_ground_state_check},
      {"oracle_entropy", 0, oracle_entropy_check},
  };
  return checks;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.emplace_back(c.name);
  return names;
}

SuiteReport run_suite(const SuiteConfig& config) {
  for (const auto& name : config.selected) {
    const auto& all = registry();
    if (std::none_of(all.begin(), all.end(), [&](const CheckSpec& c) { return name == c.name; })) {
      throw std::invalid_argument("unknown check '" + name + "'");
    }
  }
  const ToleranceTable tol = tolerance_table(config.profile);
  SuiteReport report;
  report.profile = config.profile == ToleranceProfile::Strict ? "strict" : "default";
  const auto suite_start = std::chrono::steady_clock::now();
  for (const auto& entry : registry()) {
    if (!config.selected.empty() &&
        std::find(config.selected.begin(), config.selected.end(), entry.name) ==
            config.selected.end()) {
      continue;
    }
    CheckResult result;
    result.check = entry.name;
    result.criterion = entry.criterion;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.run(result, tol, config.seed);
    } catch (const std::exception& e) {
      result.pass = false;
      result.residual = std::numeric_limits<double>::infinity();
      result.detail = e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.results.push_back(std::move(result));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  return report;
}

}  // namespace qheat::verify
