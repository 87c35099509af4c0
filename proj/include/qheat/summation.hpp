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

namespace qheat {

/// Neumaier's variant of Kahan summation. Terms are accumulated in the order
/// they are added, so results are reproducible for a fixed term order.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(Scalar x) {
    add(x);
    return *this;
  }

  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

template <typename Scalar>
class CompensatedSum<std::complex<Scalar>> {
 public:
  void add(const std::complex<Scalar>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  CompensatedSum& operator+=(const std::complex<Scalar>& z) {
    add(z);
    return *this;
  }

  std::complex<Scalar> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<Scalar> re_;
  CompensatedSum<Scalar> im_;
};

template <typename Range>
double compensated_total(const Range& values) {
  CompensatedSum<double> acc;
  for (double x : values) acc.add(x);
  return acc.value();
}

}  // namespace qheat
