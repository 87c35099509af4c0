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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qheat/errors.hpp"
#include "qheat/model.hpp"
#include "qheat/summation.hpp"

namespace qheat {

/// Transition probability X_{m,n} together with the cancellation condition
/// estimate max_j |term_j| / |sum|. All-positive evaluations report 1.
template <typename Scalar>
struct KernelValue {
  Scalar value{0};
  Scalar condition{1};
};

inline constexpr double kDefaultConditionThreshold = 1e2;

namespace detail {

template <typename Scalar>
Scalar log_binomial(int n, int k) {
  using std::lgamma;
  return lgamma(Scalar(n + 1)) - lgamma(Scalar(k + 1)) - lgamma(Scalar(n - k + 1));
}

// count * log_x with 0 * (-inf) == 0.
template <typename Scalar>
Scalar scaled_log(int count, Scalar log_x) {
  return count == 0 ? Scalar(0) : Scalar(count) * log_x;
}

template <typename Scalar>
struct LogTerm {
  Scalar log_magnitude;
  bool negative;
};

// Sums sign * exp(log_magnitude) in ascending order, scaled by the largest
// term. Returns the sum and max|term| / |sum|.
template <typename Scalar, typename Terms>
KernelValue<Scalar> sum_log_terms(const Terms& terms) {
  using std::exp;
  Scalar peak = -std::numeric_limits<Scalar>::infinity();
  for (const auto& t : terms) peak = std::max(peak, t.log_magnitude);
  if (!std::isfinite(peak)) return {Scalar(0), Scalar(1)};
  CompensatedSum<Scalar> acc;
  for (const auto& t : terms) {
    const Scalar x = exp(t.log_magnitude - peak);
    acc.add(t.negative ? -x : x);
  }
  const Scalar scaled = acc.value();
  KernelValue<Scalar> out;
  out.value = exp(peak) * scaled;
  out.condition = scaled == Scalar(0) ? std::numeric_limits<Scalar>::infinity()
                                      : Scalar(1) / std::abs(scaled);
  return out;
}

template <typename Scalar>
KernelValue<Scalar> identity_entry(int m, int n) {
  return {m == n ? Scalar(1) : Scalar(0), Scalar(1)};
}

}  // namespace detail

/// X_{m,n} from the finite alternating sum over j in [0, min(m, n)]:
///
///   X = sum_j (m+n-j)! / ((n-j)! j! (m-j)!)
///         * u^(m-j) (-v)^j (1+v)^(n-j) / (1+u)^(m+n+1-j)
///
/// The powers of u and 1+v are folded into each term so the expression stays
/// finite as tau -> 0. Terms alternate in sign whenever v > 0.
template <typename Scalar>
KernelValue<Scalar> transition_direct_unchecked(int m, int n, const RelaxationPair<Scalar>& pair) {
  using std::log;
  using std::log1p;
  if (pair.at_origin()) return detail::identity_entry<Scalar>(m, n);

  const Scalar log_u = log(pair.u);
  const Scalar log_1pu = log1p(pair.u);
  const Scalar log_1pv = log(pair.one_plus_v());
  const bool v_zero = pair.v == Scalar(0);
  const Scalar log_abs_v = v_zero ? Scalar(0) : log(std::abs(pair.v));
  const bool alternating = pair.v > Scalar(0);
  const int j_max = v_zero ? 0 : std::min(m, n);

  std::vector<detail::LogTerm<Scalar>> terms;
  terms.reserve(static_cast<std::size_t>(j_max) + 1);
  using std::lgamma;
  for (int j = 0; j <= j_max; ++j) {
    Scalar lt = lgamma(Scalar(m + n - j + 1)) - lgamma(Scalar(j + 1)) -
                lgamma(Scalar(m - j + 1)) - lgamma(Scalar(n - j + 1));
    lt += detail::scaled_log(m - j, log_u);
    lt += detail::scaled_log(j, log_abs_v);
    lt += detail::scaled_log(n - j, log_1pv);
    lt -= Scalar(m + n + 1 - j) * log_1pu;
    terms.push_back({lt, alternating && (j % 2 == 1)});
  }
  return detail::sum_log_terms<Scalar>(terms);
}

/// Checked direct evaluation. Throws ConditionLoss when the cancellation
/// estimate exceeds `threshold`.
template <typename Scalar>
KernelValue<Scalar> transition_direct(int m, int n, const RelaxationPair<Scalar>& pair,
                                      double threshold = kDefaultConditionThreshold) {
  const auto out = transition_direct_unchecked(m, n, pair);
  if (!(static_cast<double>(out.condition) <= threshold)) {
    throw NumericError(ErrorKind::ConditionLoss,
                       "direct sum at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                           ") has condition " + std::to_string(static_cast<double>(out.condition)));
  }
  return out;
}

/// Argument y = (u - v) / (u (1 + v)) of the hypergeometric representation.
template <typename Scalar>
Scalar hypergeometric_argument(const RelaxationPair<Scalar>& pair) {
  return pair.decay / (pair.u * pair.one_plus_v());
}

/// X_{m,n} through the terminating series F[-n,-m,1;y] = sum_k C(n,k) C(m,k) y^k.
/// Every term is positive since y > 0 for tau > 0.
template <typename Scalar>
Scalar transition_hypergeometric_terminating(int m, int n, const RelaxationPair<Scalar>& pair) {
  using std::log;
  using std::log1p;
  if (pair.at_origin()) return detail::identity_entry<Scalar>(m, n).value;

  const Scalar log_u = log(pair.u);
  const Scalar log_1pu = log1p(pair.u);
  const Scalar log_1pv = log(pair.one_plus_v());
  const bool stationary = pair.decay == Scalar(0);
  const Scalar log_decay = stationary ? Scalar(0) : log(pair.decay);
  const int k_max = stationary ? 0 : std::min(m, n);

  std::vector<detail::LogTerm<Scalar>> terms;
  terms.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    Scalar lt = detail::log_binomial<Scalar>(n, k) + detail::log_binomial<Scalar>(m, k);
    lt += detail::scaled_log(m - k, log_u);
    lt += detail::scaled_log(n - k, log_1pv);
    lt += detail::scaled_log(k, log_decay);
    lt -= Scalar(m + n + 1) * log_1pu;
    terms.push_back({lt, false});
  }
  return detail::sum_log_terms<Scalar>(terms).value;
}

inline constexpr int kEulerSeriesTermCap = 200000;

/// X_{m,n} through the Euler-transformed series
///
///   F[-n,-m,1;y] = (1-y)^(1+m+n) sum_k y^k C(n+k,k) C(m+k,k),
///
/// valid for 0 < y < 1. Throws SeriesNonConvergent outside that range and
/// TruncationFailure when the geometric tail bound is not met within
/// `term_cap` terms.
template <typename Scalar>
Scalar transition_hypergeometric_euler(int m, int n, const RelaxationPair<Scalar>& pair,
                                       int term_cap = kEulerSeriesTermCap) {
  using std::exp;
  using std::log;
  using std::sqrt;
  if (pair.at_origin()) return detail::identity_entry<Scalar>(m, n).value;

  const Scalar y = hypergeometric_argument(pair);
  if (!(y < Scalar(1)) || !std::isfinite(static_cast<double>(y))) {
    throw NumericError(ErrorKind::SeriesNonConvergent,
                       "hypergeometric argument y = " + std::to_string(static_cast<double>(y)) +
                           " is outside (0, 1)");
  }
  // (1-y) = v (1+u) / (u (1+v)) folded into the prefactor u^m (1+v)^n / (1+u)^(m+n+1).
  const Scalar log_prefactor = Scalar(1 + m + n) * log(pair.v) - Scalar(n + 1) * log(pair.u) -
                               Scalar(m + 1) * log(pair.one_plus_v());
  if (y == Scalar(0)) return exp(log_prefactor);

  const Scalar log_y = log(y);
  auto log_term = [&](int k) {
    return Scalar(k) * log_y + detail::log_binomial<Scalar>(n + k, k) +
           detail::log_binomial<Scalar>(m + k, k);
  };
  // Peak of the term sequence: ratio y (n+x)(m+x) / x^2 = 1 at x = k + 1.
  const Scalar a = 1 - y;
  const Scalar b = y * Scalar(n + m);
  const Scalar c = y * Scalar(n) * Scalar(m);
  const Scalar x_peak = (b + sqrt(b * b + 4 * a * c)) / (2 * a);
  const int k_peak = std::max(0, static_cast<int>(std::ceil(static_cast<double>(x_peak))) - 1);
  const Scalar log_scale = log_term(k_peak);

  CompensatedSum<Scalar> acc;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon() / 2;
  for (int k = 0; k < term_cap; ++k) {
    const Scalar t = exp(log_term(k) - log_scale);
    acc.add(t);
    const Scalar ratio = y * Scalar(n + k + 1) * Scalar(m + k + 1) / (Scalar(k + 1) * Scalar(k + 1));
    if (k >= k_peak && ratio < Scalar(1)) {
      // Ratios decrease monotonically, so the remaining tail is bounded by a
      // geometric series with the current ratio.
      const Scalar tail = t * ratio / (1 - ratio);
      if (tail <= eps * acc.value()) return exp(log_prefactor + log_scale) * acc.value();
    }
  }
  throw NumericError(ErrorKind::TruncationFailure,
                     "Euler series at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                         ") not converged after " + std::to_string(term_cap) + " terms, y = " +
                         std::to_string(static_cast<double>(y)));
}

enum class HypergeometricForm {
  Auto,         ///< Euler series for y < 1, terminating polynomial otherwise
  Euler,        ///< Euler-transformed infinite series only
  Terminating,  ///< finite series F[-n,-m,1;y]
};

template <typename Scalar>
Scalar transition_hypergeometric(int m, int n, const RelaxationPair<Scalar>& pair,
                                 HypergeometricForm form = HypergeometricForm::Auto) {
  if (pair.at_origin()) return detail::identity_entry<Scalar>(m, n).value;
  switch (form) {
    case HypergeometricForm::Euler:
      return transition_hypergeometric_euler(m, n, pair);
    case HypergeometricForm::Terminating:
      return transition_hypergeometric_terminating(m, n, pair);
    case HypergeometricForm::Auto:
      break;
  }
  if (hypergeometric_argument(pair) < Scalar(1)) {
    try {
      return transition_hypergeometric_euler(m, n, pair);
    } catch (const NumericError& e) {
      if (e.kind() != ErrorKind::TruncationFailure) throw;
    }
  }
  return transition_hypergeometric_terminating(m, n, pair);
}

/// Chernoff bound on the mass a column starting in Fock state n places above
/// level n_max, using the exact column generating function
///   sum_m X_{m,n} s^m = (1 + v - v s)^n / (1 + u - u s)^(n+1).
double column_tail_bound(int n, int n_max, const RelaxationPair<double>& pair);

/// Smallest N with e^{-beta N} <= epsilon, i.e. ceil(ln(1/epsilon) / beta).
int geometric_truncation_index(double beta, double epsilon);

struct TruncationCertificate {
  double epsilon = 0.0;
  int thermal_index = 0;      ///< from the initial thermal law at beta1
  int stationary_index = 0;   ///< from the stationary thermal law at beta2
  double thermal_tail = 0.0;  ///< sum_{n > n_max} of the initial thermal law
  double stationary_tail = 0.0;
};

struct TransitionOptions {
  double epsilon = 1e-12;
  std::optional<int> n_max;  ///< overrides the certificate-driven choice
  double condition_threshold = kDefaultConditionThreshold;
  bool allow_extended = true;  ///< long double retry when both double paths fail
};

/// Truncated transition matrix X(m, n), 0 <= m, n <= n_max.
struct TransitionMatrix {
  Eigen::MatrixXd entries;
  int n_max = 0;
  double tau = 0.0;
  /// Per-column bound on the mass above n_max; `leakage` is the maximum.
  Eigen::VectorXd column_leakage;
  double leakage = 0.0;
  TruncationCertificate certificate;
  double min_entry = 0.0;
  double max_entry = 0.0;
  int direct_count = 0;
  int hypergeometric_count = 0;
  int extended_count = 0;

  double operator()(int m, int n) const { return entries(m, n); }
};

/// Fills X by the direct path, falling back to the hypergeometric path when the
/// condition estimate exceeds the threshold and to long double after that.
/// Entries below -1e-12 raise NegativeProbability; kernel failures are
/// rethrown with their (m, n) context.
TransitionMatrix build_transition_matrix(const ModelParams& params,
                                         const TransitionOptions& options = {});

}  // namespace qheat
