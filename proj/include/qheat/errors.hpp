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

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qheat {

/// Failure categories raised by the numerical kernels. The CLI reports the
/// name of the kind and maps every kind to the numeric-failure exit code.
enum class ErrorKind {
  ConditionLoss,
  SeriesNonConvergent,
  TruncationFailure,
  DomainError,
  AliasingDetected,
  InversionResidue,
  StepRejected,
  CumulantMismatch,
  InsufficientSupport,
  NegativeProbability,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConditionLoss: return "ConditionLoss";
    case ErrorKind::SeriesNonConvergent: return "SeriesNonConvergent";
    case ErrorKind::TruncationFailure: return "TruncationFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::AliasingDetected: return "AliasingDetected";
    case ErrorKind::InversionResidue: return "InversionResidue";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::CumulantMismatch: return "CumulantMismatch";
    case ErrorKind::InsufficientSupport: return "InsufficientSupport";
    case ErrorKind::NegativeProbability: return "NegativeProbability";
  }
  return "Unknown";
}

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Short human-readable rendering of a double for diagnostics.
inline std::string show(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace qheat
