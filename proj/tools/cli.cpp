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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "qheat/cumulants.hpp"
#include "qheat/distribution.hpp"
#include "qheat/errors.hpp"
#include "qheat/verify.hpp"

namespace qheat::cli {

using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw std::invalid_argument("cannot parse " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_tau_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("tau grid must be start:stop:step");
  const double start = parse_double(parts[0], "tau grid start");
  const double stop = parse_double(parts[1], "tau grid stop");
  const double step = parse_double(parts[2], "tau grid step");
  if (!(step > 0.0)) throw std::invalid_argument("tau grid step must be > 0");
  if (!(start >= 0.0)) throw std::invalid_argument("tau grid start must be >= 0");
  if (!(stop >= start)) throw std::invalid_argument("tau grid must be ascending (stop >= start)");
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

namespace {

struct ModelFlags {
  double beta1 = 1.0;
  double beta2 = 1.0;
  double hbar_omega = 1.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--beta1", flags.beta1, "oscillator inverse temperature times hbar*omega")->required();
  cmd->add_option("--beta2", flags.beta2, "bath inverse temperature times hbar*omega")->required();
  cmd->add_option("--hbar-omega", flags.hbar_omega, "energy quantum used to report Q")
      ->capture_default_str();
}

json params_block(const ModelParams& p) {
  json j{{"beta1", p.beta1}, {"beta2", p.beta2}, {"hbar_omega", p.hbar_omega}};
  if (p.stationary()) {
    j["tau"] = "inf";
  } else {
    j["tau"] = p.tau;
  }
  return j;
}

constexpr const char* kHeatConvention =
    "Q = E_final - E_initial of the oscillator; Q > 0 means energy absorbed from the bath";

// Writes to --out when given, otherwise to the command's stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
  file << text;
}

struct DistFlags {
  ModelFlags model;
  std::string tau = "inf";
  std::string kmax = "auto";
  std::string format = "csv";
  std::string mode = "exact";
  std::string out;
};

std::string run_dist(const DistFlags& flags) {
  const double tau = flags.tau == "inf" ? std::numeric_limits<double>::infinity()
                                        : parse_double(flags.tau, "--tau");
  const ModelParams params = make_params(flags.model.beta1, flags.model.beta2, tau, flags.model.hbar_omega);
  int k_max = 0;
  if (flags.kmax == "auto") {
    k_max = default_k_max(params);
  } else {
    k_max = static_cast<int>(parse_double(flags.kmax, "--kmax"));
    if (k_max < 1 || std::to_string(k_max) != flags.kmax) {
      throw std::invalid_argument("--kmax must be a positive integer or 'auto'");
    }
  }

  ModelParams reported = params;
  HeatDistribution dist;
  std::optional<ClassicalDensity> envelope;
  if (flags.mode == "exact") {
    dist = params.stationary() ? asymptotic_distribution(params, k_max)
                               : invert_charfn(params, k_max, 4 * k_max);
  } else if (flags.mode == "asymptotic" || flags.mode == "classical") {
    reported.tau = std::numeric_limits<double>::infinity();
    dist = asymptotic_distribution(params, k_max);
    if (flags.mode == "classical") envelope = classical_distribution(params);
  } else if (flags.mode == "isothermal") {
    if (params.beta1 != params.beta2) {
      throw std::invalid_argument("isothermal mode needs --beta1 equal to --beta2");
    }
    reported.tau = std::numeric_limits<double>::infinity();
    dist = isothermal_distribution(params.beta1, k_max, params.hbar_omega);
  } else if (flags.mode == "lowtemp") {
    reported.tau = std::numeric_limits<double>::infinity();
    dist = low_temperature_distribution(params);
  } else {
    throw std::invalid_argument("unknown --mode '" + flags.mode + "'");
  }

  if (flags.format == "csv") {
    std::string text = envelope ? "k,Q,P,envelope\n" : "k,Q,P\n";
    for (int k = -dist.k_max; k <= dist.k_max; ++k) {
      text += std::to_string(k) + "," + format_number(dist.heat(k)) + "," + format_number(dist.mass(k));
      if (envelope) text += "," + format_number((*envelope)(dist.heat(k)));
      text += "\n";
    }
    return text;
  }
  if (flags.format != "json") throw std::invalid_argument("unknown --format '" + flags.format + "'");
  json rows = json::array();
  for (int k = -dist.k_max; k <= dist.k_max; ++k) {
    json row{{"k", k}, {"Q", dist.heat(k)}, {"P", dist.mass(k)}};
    if (envelope) row["envelope"] = (*envelope)(dist.heat(k));
    rows.push_back(row);
  }
  json doc{{"metadata",
            {{"tool", "qheat"},
             {"version", kToolVersion},
             {"command", "dist"},
             {"mode", flags.mode},
             {"params", params_block(reported)},
             {"heat_convention", kHeatConvention},
             {"truncation",
              {{"k_max", dist.k_max},
               {"truncation_error", dist.truncation_error},
               {"clamped_mass", dist.clamped_mass},
               {"source", dist.source}}}}},
           {"rows", rows}};
  return doc.dump(1) + "\n";
}

struct CumulantFlags {
  ModelFlags model;
  std::string tau_grid;
  std::string format = "csv";
  std::string out;
};

std::string run_cumulants(const CumulantFlags& flags) {
  const auto grid = parse_tau_grid(flags.tau_grid);
  const ModelParams params = make_params(flags.model.beta1, flags.model.beta2, 0.0, flags.model.hbar_omega);
  const auto trace = cumulant_trace(params, grid);
  if (flags.format == "csv") {
    std::string text = "tau,mean,variance,mean_inf,variance_inf\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      text += format_number(trace.tau_grid[i]) + "," + format_number(trace.mean[i]) + "," +
              format_number(trace.variance[i]) + "," + format_number(trace.mean_inf) + "," +
              format_number(trace.variance_inf) + "\n";
    }
    return text;
  }
  if (flags.format != "json") throw std::invalid_argument("unknown --format '" + flags.format + "'");
  json rows = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back({{"tau", trace.tau_grid[i]}, {"mean", trace.mean[i]}, {"variance", trace.variance[i]}});
  }
  json doc{{"metadata",
            {{"tool", "qheat"},
             {"version", kToolVersion},
             {"command", "cumulants"},
             {"params", params_block(params)},
             {"heat_convention", kHeatConvention},
             {"mean_inf", trace.mean_inf},
             {"variance_inf", trace.variance_inf},
             {"relaxation_constant", trace.relaxation_constant},
             {"max_cross_check_residual", trace.max_cross_check_residual}}},
           {"rows", rows}};
  return doc.dump(1) + "\n";
}

struct VerifyFlags {
  std::string suite = "all";
  std::string profile = "default";
  std::string out;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-exchange statistics of a damped quantum harmonic oscillator", "qheat"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  DistFlags dist;
  auto* dist_cmd = app.add_subcommand("dist", "heat distribution on the lattice Q = k hbar_omega");
  add_model_flags(dist_cmd, dist.model);
  dist_cmd->add_option("--tau", dist.tau, "contact time gamma*t, or 'inf'")->capture_default_str();
  dist_cmd->add_option("--kmax", dist.kmax, "lattice half-width, or 'auto'")->capture_default_str();
  dist_cmd->add_option("--format", dist.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  dist_cmd->add_option("--mode", dist.mode, "exact, asymptotic, isothermal, classical or lowtemp")
      ->check(CLI::IsMember({"exact", "asymptotic", "isothermal", "classical", "lowtemp"}))
      ->capture_default_str();
  dist_cmd->add_option("--out", dist.out, "output file (default stdout)");

  CumulantFlags cumulants;
  auto* cum_cmd = app.add_subcommand("cumulants", "mean and variance of the heat over a tau grid");
  add_model_flags(cum_cmd, cumulants.model);
  cum_cmd->add_option("--tau-grid", cumulants.tau_grid, "start:stop:step")->required();
  cum_cmd->add_option("--format", cumulants.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cum_cmd->add_option("--out", cumulants.out, "output file (default stdout)");

  VerifyFlags verify;
  auto* ver_cmd = app.add_subcommand("verify", "run the verification suite, JSON report");
  ver_cmd->add_option("--suite", verify.suite, "'all' or a single check name")->capture_default_str();
  ver_cmd->add_option("--tol-profile", verify.profile, "default or strict")
      ->check(CLI::IsMember({"default", "strict"}))
      ->capture_default_str();
  ver_cmd->add_option("--out", verify.out, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*dist_cmd) {
      emit(run_dist(dist), dist.out, out);
      return kOk;
    }
    if (*cum_cmd) {
      emit(run_cumulants(cumulants), cumulants.out, out);
      return kOk;
    }
    verify::SuiteConfig config;
    config.profile = verify.profile == "strict" ? verify::ToleranceProfile::Strict
                                                : verify::ToleranceProfile::Default;
    if (verify.suite != "all") config.selected.push_back(verify.suite);
    const auto report = verify::run_suite(config);
    emit(report.to_json().dump(1) + "\n", verify.out, out);
    return report.all_passed() ? kOk : kVerificationFailed;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qheat::cli
