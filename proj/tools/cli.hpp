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

#include <iosfwd>
#include <string>
#include <vector>

namespace qheat::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumeric = 2,
  kVerificationFailed = 3,
};

/// Round-trip decimal with 17 significant digits.
std::string format_number(double value);

/// Parses "start:stop:step" into an ascending grid. Throws std::invalid_argument
/// for malformed, descending or non-positive-step specifications.
std::vector<double> parse_tau_grid(const std::string& text);

/// Runs the command line `args` (without the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qheat::cli
