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

#include "qheat/model.hpp"

#include <stdexcept>
#include <string>

namespace qheat {

void validate(const ModelParams& params) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(params.beta1)) throw std::invalid_argument("beta1 must be finite and > 0");
  if (!positive(params.beta2)) throw std::invalid_argument("beta2 must be finite and > 0");
  if (!positive(params.hbar_omega)) throw std::invalid_argument("hbar_omega must be finite and > 0");
  if (std::isnan(params.tau) || params.tau < 0.0) throw std::invalid_argument("tau must be >= 0");
}

ModelParams make_params(double beta1, double beta2, double tau, double hbar_omega) {
  ModelParams params{beta1, beta2, tau, hbar_omega};
  validate(params);
  return params;
}

}  // namespace qheat
