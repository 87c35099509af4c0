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

#include "qheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qheat/errors.hpp"
#include "qheat/parallel.hpp"

namespace qheat::oracle {

BirthDeathGenerator birth_death_generator(double nbar, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  BirthDeathGenerator gen;
  gen.nbar = nbar;
  gen.n_max = n_max;
  const int dim = n_max + 1;
  gen.lower = Eigen::VectorXd::Zero(dim);
  gen.diag = Eigen::VectorXd::Zero(dim);
  gen.upper = Eigen::VectorXd::Zero(dim);
  for (int m = 0; m < dim; ++m) {
    gen.diag(m) = -(m * (nbar + 1.0) + (m + 1) * nbar);
    if (m > 0) gen.lower(m) = m * nbar;
    if (m < n_max) gen.upper(m) = (m + 1) * (nbar + 1.0);
  }
  gen.boundary_loss = (n_max + 1) * nbar;
  return gen;
}

Eigen::MatrixXd BirthDeathGenerator::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int m = 0; m < dim(); ++m) {
    out(m, m) = diag(m);
    if (m > 0) out(m, m - 1) = lower(m);
    if (m < n_max) out(m, m + 1) = upper(m);
  }
  return out;
}

void BirthDeathGenerator::apply(const double* p, double* out) const {
  const int last = n_max;
  out[0] = diag(0) * p[0] + (last > 0 ? upper(0) * p[1] : 0.0);
  for (int m = 1; m < last; ++m) {
    out[m] = lower(m) * p[m - 1] + diag(m) * p[m] + upper(m) * p[m + 1];
  }
  out[last] = lower(last) * p[last - 1] + diag(last) * p[last];
}

double BirthDeathGenerator::rate_bound() const {
  double bound = 0.0;
  for (int m = 0; m < dim(); ++m) {
    bound = std::max(bound, std::abs(diag(m)) + std::abs(lower(m)) + std::abs(upper(m)));
  }
  return bound;
}

Eigen::VectorXd thermal_populations(double nbar, int n_max) {
  Eigen::VectorXd p(n_max + 1);
  const double ratio = nbar / (nbar + 1.0);
  p(0) = 1.0 / (nbar + 1.0);
  for (int m = 1; m <= n_max; ++m) p(m) = p(m - 1) * ratio;
  return p;
}

long long step_count(const BirthDeathGenerator& gen, double duration, const StepControl& control) {
  if (duration <= 0.0) return 0;
  const double h_bound = control.step_scale / ((gen.nbar + 1.0) * std::max(gen.n_max, 1));
  return static_cast<long long>(std::ceil(duration / h_bound));
}

namespace {

// Integrates one column in place; `sink` accumulates the boundary loss.
void integrate_column(double* y, double& sink, const BirthDeathGenerator& gen, double h,
                      long long steps) {
  const int dim = gen.dim();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const double loss = gen.boundary_loss;
  const int top = gen.n_max;
  for (long long s = 0; s < steps; ++s) {
    gen.apply(y, k1.data());
    const double s1 = loss * y[top];
    for (int m = 0; m < dim; ++m) tmp[m] = y[m] + 0.5 * h * k1[m];
    gen.apply(tmp.data(), k2.data());
    const double s2 = loss * tmp[top];
    for (int m = 0; m < dim; ++m) tmp[m] = y[m] + 0.5 * h * k2[m];
    gen.apply(tmp.data(), k3.data());
    const double s3 = loss * tmp[top];
    for (int m = 0; m < dim; ++m) tmp[m] = y[m] + h * k3[m];
    gen.apply(tmp.data(), k4.data());
    const double s4 = loss * tmp[top];
    for (int m = 0; m < dim; ++m) y[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    sink += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
  }
}

void integrate_batch(Eigen::MatrixXd& p, Eigen::VectorXd& sink, const BirthDeathGenerator& gen,
                     double duration, long long steps) {
  if (steps == 0) return;
  const double h = duration / static_cast<double>(steps);
  parallel_for(static_cast<int>(p.cols()), [&](int c) {
    integrate_column(p.col(c).data(), sink(c), gen, h, steps);
  });
}

}  // namespace

PopulationBatch evolve(const PopulationBatch& initial, const BirthDeathGenerator& gen,
                       double duration, const StepControl& control) {
  if (initial.p.rows() != gen.dim()) throw std::invalid_argument("state dimension mismatch");
  if (!(duration >= 0.0) || std::isinf(duration)) {
    throw std::invalid_argument("duration must be finite and >= 0");
  }
  PopulationBatch out = initial;
  out.tau = initial.tau + duration;
  if (out.leakage.size() != out.p.cols()) out.leakage = Eigen::VectorXd::Zero(out.p.cols());
  const long long steps = step_count(gen, duration, control);
  if (steps == 0) return out;

  integrate_batch(out.p, out.leakage, gen, duration, steps);
  if (!control.certify) return out;

  PopulationBatch fine = initial;
  fine.tau = out.tau;
  if (fine.leakage.size() != fine.p.cols()) fine.leakage = Eigen::VectorXd::Zero(fine.p.cols());
  integrate_batch(fine.p, fine.leakage, gen, duration, 2 * steps);
  const double diff = std::max((fine.p - out.p).cwiseAbs().maxCoeff(),
                               (fine.leakage - out.leakage).cwiseAbs().maxCoeff());
  if (diff > control.certificate_tolerance) {
    throw NumericError(ErrorKind::StepRejected,
                       "half-step disagreement " + show(diff) + " over " +
                           std::to_string(steps) + " steps; reduce the step scale");
  }
  return fine;
}

PopulationState evolve(const PopulationState& initial, const BirthDeathGenerator& gen,
                       double duration, const StepControl& control) {
  PopulationBatch batch;
  batch.p = initial.p;
  batch.tau = initial.tau;
  batch.leakage = Eigen::VectorXd::Constant(1, initial.leakage);
  const PopulationBatch out = evolve(batch, gen, duration, control);
  return {out.p.col(0), out.tau, out.leakage(0)};
}

double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& stationary) {
  double acc = 0.0;
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    if (p(m) > 0.0) acc += p(m) * std::log(p(m) / stationary(m));
  }
  return acc;
}

namespace {

struct PaddedRun {
  std::vector<PopulationBatch> snapshots;
  int fock_dim = 0;
  double leakage = 0.0;
};

// Evolves Fock columns 0..n_columns-1 through the ascending taus, doubling the
// padding above `n_columns - 1` until the boundary loss meets the target.
PaddedRun padded_run(double nbar, int n_columns, const std::vector<double>& taus,
                     const StepControl& control, double leakage_target) {
  if (!std::is_sorted(taus.begin(), taus.end())) throw std::invalid_argument("taus must ascend");
  for (int pad = 10;; pad *= 2) {
    const auto gen = birth_death_generator(nbar, n_columns - 1 + pad);
    PopulationBatch batch;
    batch.p = Eigen::MatrixXd::Identity(gen.dim(), n_columns);
    batch.leakage = Eigen::VectorXd::Zero(n_columns);
    PaddedRun run;
    run.fock_dim = gen.dim();
    for (double tau : taus) {
      batch = evolve(batch, gen, tau - batch.tau, control);
      run.snapshots.push_back(batch);
    }
    run.leakage = batch.leakage.maxCoeff();
    if (run.leakage <= leakage_target || pad > 4096) return run;
  }
}

}  // namespace

OracleTransitions transition_oracle(const ModelParams& params, int n_compare,
                                    const std::vector<double>& taus, const StepControl& control,
                                    double leakage_target) {
  validate(params);
  if (n_compare < 0) throw std::invalid_argument("n_compare must be >= 0");
  const double nbar = 1.0 / std::expm1(params.beta2);
  const PaddedRun run = padded_run(nbar, n_compare + 1, taus, control, leakage_target);
  OracleTransitions out;
  out.fock_dim = run.fock_dim;
  out.leakage = run.leakage;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out.taus.push_back(taus[i]);
    out.matrices.push_back(run.snapshots[i].p.topRows(n_compare + 1));
  }
  return out;
}

HeatDistribution heat_distribution_bruteforce(const ModelParams& params, int n_max,
                                              const StepControl& control, double leakage_target) {
  validate(params);
  if (params.stationary()) throw std::invalid_argument("brute force needs a finite tau");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const double nbar = 1.0 / std::expm1(params.beta2);
  const PaddedRun run = padded_run(nbar, n_max + 1, {params.tau}, control, leakage_target);
  const PopulationBatch& batch = run.snapshots.back();
  const int dim = run.fock_dim;

  const int k_max = std::max(n_max, dim - 1);
  HeatDistribution dist = make_distribution(k_max, params.hbar_omega, params.tau, "bruteforce");
  const double q = std::exp(-params.beta1);
  const double one_minus_q = -std::expm1(-params.beta1);
  double leak = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double weight = one_minus_q * std::pow(q, n);
    for (int m = 0; m < dim; ++m) dist.masses(m - n + k_max) += weight * batch.p(m, n);
    leak += weight * batch.leakage(n);
  }
  for (Eigen::Index i = 0; i < dist.masses.size(); ++i) {
    if (dist.masses(i) < -1e-12) {
      throw NumericError(ErrorKind::NegativeProbability,
                         "brute-force mass " + show(dist.masses(i)) + " at k = " +
                             std::to_string(i - k_max));
    }
    if (dist.masses(i) < 0.0) {
      dist.clamped_mass += -dist.masses(i);
      dist.masses(i) = 0.0;
    }
  }
  dist.truncation_error = std::pow(q, n_max + 1) + leak;
  return dist;
}

}  // namespace qheat::oracle
