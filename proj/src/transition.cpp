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

#include "qheat/transition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qheat/parallel.hpp"

namespace qheat {

double column_tail_bound(int n, int n_max, const RelaxationPair<double>& pair) {
  if (n > n_max) return 1.0;
  if (pair.at_origin() || pair.u <= 0.0) return 0.0;
  const double u = pair.u;
  const double v = pair.v;
  // log of g_n(s) / s^(n_max+1) as a function of t = ln s on (0, ln((1+u)/u)).
  auto log_bound = [&](double t) {
    const double s = std::exp(t);
    const double up = 1.0 + u - u * s;
    const double vp = 1.0 + v - v * s;
    if (up <= 0.0 || vp <= 0.0) return std::numeric_limits<double>::infinity();
    return n * std::log(vp) - (n + 1) * std::log(up) - (n_max + 1) * t;
  };
  // The bound is convex in t; golden-section search on the open interval.
  double lo = 0.0;
  double hi = std::log1p(1.0 / u);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - phi * (hi - lo);
  double b = lo + phi * (hi - lo);
  double fa = log_bound(a);
  double fb = log_bound(b);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * (1.0 + hi); ++iter) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = log_bound(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = log_bound(b);
    }
  }
  const double best = std::min({fa, fb, 0.0});
  return std::exp(best);
}

int geometric_truncation_index(double beta, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  return static_cast<int>(std::ceil(-std::log(epsilon) / beta));
}

namespace {

struct EntryResult {
  double value;
  int path;  // 0 direct, 1 hypergeometric, 2 extended
};

EntryResult evaluate_entry(int m, int n, const RelaxationPair<double>& pair,
                           const RelaxationPair<long double>& pair_ext,
                           const TransitionOptions& options) {
  const auto direct = transition_direct_unchecked(m, n, pair);
  if (direct.condition <= options.condition_threshold) return {direct.value, 0};
  try {
    return {transition_hypergeometric(m, n, pair), 1};
  } catch (const NumericError&) {
    if (!options.allow_extended) throw;
  }
  const auto ext = transition_direct(m, n, pair_ext, options.condition_threshold);
  return {static_cast<double>(ext.value), 2};
}

}  // namespace

TransitionMatrix build_transition_matrix(const ModelParams& params,
                                         const TransitionOptions& options) {
  validate(params);
  TransitionMatrix tm;
  auto& cert = tm.certificate;
  cert.epsilon = options.epsilon;
  cert.thermal_index = geometric_truncation_index(params.beta1, options.epsilon);
  cert.stationary_index = geometric_truncation_index(params.beta2, options.epsilon);
  tm.n_max = options.n_max.value_or(std::max(cert.thermal_index, cert.stationary_index));
  if (tm.n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  cert.thermal_tail = std::exp(-params.beta1 * (tm.n_max + 1));
  cert.stationary_tail = std::exp(-params.beta2 * (tm.n_max + 1));
  tm.tau = params.tau;

  const int dim = tm.n_max + 1;
  const auto pair = relaxation_pair<double>(params);
  const auto pair_ext = relaxation_pair<long double>(params);
  tm.entries.resize(dim, dim);
  tm.column_leakage.resize(dim);
  Eigen::MatrixXi paths(dim, dim);

  parallel_for(dim, [&](int n) {
    for (int m = 0; m < dim; ++m) {
      EntryResult r{};
      try {
        r = evaluate_entry(m, n, pair, pair_ext, options);
      } catch (const NumericError& e) {
        throw NumericError(e.kind(), "entry (m,n)=(" + std::to_string(m) + "," +
                                         std::to_string(n) + "): " + e.what());
      }
      tm.entries(m, n) = r.value;
      paths(m, n) = r.path;
    }
    tm.column_leakage(n) = column_tail_bound(n, tm.n_max, pair);
  });

  tm.min_entry = tm.entries.minCoeff();
  tm.max_entry = tm.entries.maxCoeff();
  if (tm.min_entry < -1e-12) {
    Eigen::Index m = 0;
    Eigen::Index n = 0;
    tm.entries.minCoeff(&m, &n);
    throw NumericError(ErrorKind::NegativeProbability,
                       "entry (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                           ") = " + show(tm.min_entry));
  }
  tm.leakage = tm.column_leakage.maxCoeff();
  tm.direct_count = static_cast<int>((paths.array() == 0).count());
  tm.hypergeometric_count = static_cast<int>((paths.array() == 1).count());
  tm.extended_count = static_cast<int>((paths.array() == 2).count());
  return tm;
}

}  // namespace qheat
