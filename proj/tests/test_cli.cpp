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

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"

namespace {

using qheat::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST(FormatNumber, RoundTrips) {
  for (double x : {0.1, -0.49255123456789012, 1e-300, 2.0 / 3.0, 0.0}) {
    EXPECT_EQ(std::strtod(qheat::cli::format_number(x).c_str(), nullptr), x);
  }
}

TEST(TauGrid, Parses) {
  const auto g = qheat::cli::parse_tau_grid("0:8:0.05");
  ASSERT_EQ(g.size(), 161u);
  EXPECT_DOUBLE_EQ(g.back(), 8.0);
  EXPECT_EQ(qheat::cli::parse_tau_grid("1:1:0.5").size(), 1u);
  EXPECT_THROW(qheat::cli::parse_tau_grid("1:0:0.5"), std::invalid_argument);
  EXPECT_THROW(qheat::cli::parse_tau_grid("0:1"), std::invalid_argument);
  EXPECT_THROW(qheat::cli::parse_tau_grid("0:1:0"), std::invalid_argument);
}

TEST(Dist, AsymptoticCsv) {
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "2.5", "--tau", "inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"k", "Q", "P"}));
  const int k_max = (int(rows.size()) - 2) / 2;
  const auto& centre = rows[1 + k_max];
  EXPECT_EQ(centre[0], "0");
  EXPECT_NEAR(std::stod(centre[2]), 0.5983, 5e-5);
}

TEST(Dist, IsothermalIsSymmetric) {
  const auto r = invoke({"dist", "--beta1", "2.5", "--beta2", "2.5", "--tau", "inf"});
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  const std::size_t n = rows.size() - 1;
  for (std::size_t i = 1; i <= n; ++i) EXPECT_EQ(rows[i][2], rows[n + 1 - i][2]);
  const auto iso = invoke({"dist", "--beta1", "2.5", "--beta2", "2.5", "--mode", "isothermal"});
  ASSERT_EQ(iso.code, 0);
  EXPECT_EQ(csv(iso.out).size(), rows.size());
}

TEST(Dist, OriginIsSingleMass) {
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "3", "--tau", "0", "--kmax", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::stod(rows[i][2]), rows[i][0] == "0" ? 1.0 : 0.0);
  }
}

TEST(Dist, ClassicalEnvelopeColumn) {
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "2.5", "--mode", "classical"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(csv(r.out)[0].size(), 4u);
  EXPECT_EQ(r.out.rfind("k,Q,P,envelope\n", 0), 0u);
}

TEST(Dist, HbarOmegaScalesHeatColumn) {
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "3", "--tau", "1", "--hbar-omega",
                         "2", "--kmax", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : csv(r.out)) {
    if (row[0] == "k") continue;
    EXPECT_EQ(std::stod(row[1]), 2.0 * std::stod(row[0]));
  }
}

TEST(Dist, DeterministicOutput) {
  const std::vector<std::string> args{"dist", "--beta1", "1", "--beta2", "3", "--tau", "0.7"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  setenv("QHEAT_THREADS", "3", 1);
  const auto threaded = invoke(args).out;
  unsetenv("QHEAT_THREADS");
  EXPECT_EQ(threaded, invoke(args).out);
}

TEST(Dist, CsvAndJsonAgree) {
  std::vector<std::string> args{"dist", "--beta1", "1", "--beta2", "3", "--tau", "2"};
  const auto c = invoke(args);
  args.insert(args.end(), {"--format", "json"});
  const auto j = invoke(args);
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  const auto rows = csv(c.out);
  ASSERT_EQ(doc["rows"].size() + 1, rows.size());
  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    EXPECT_EQ(doc["rows"][i]["P"].get<double>(), std::strtod(rows[i + 1][2].c_str(), nullptr));
  }
  const auto& meta = doc["metadata"];
  EXPECT_EQ(meta["version"], qheat::cli::kToolVersion);
  EXPECT_EQ(meta["params"]["tau"].get<double>(), 2.0);
  EXPECT_TRUE(meta["truncation"].contains("truncation_error"));
  EXPECT_TRUE(meta.contains("heat_convention"));
}

TEST(Dist, WritesFile) {
  const std::string path = ::testing::TempDir() + "qheat_dist.csv";
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "3", "--tau", "inf", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::remove(path.c_str());
}

TEST(Dist, UsageErrors) {
  EXPECT_EQ(invoke({"dist", "--beta1", "1"}).code, qheat::cli::kUsage);
  EXPECT_EQ(invoke({"dist", "--beta1", "1", "--beta2", "3", "--tau", "-1"}).code,
            qheat::cli::kUsage);
  EXPECT_EQ(invoke({"dist", "--beta1", "1", "--beta2", "3", "--mode", "isothermal"}).code,
            qheat::cli::kUsage);
  EXPECT_EQ(invoke({"dist", "--beta1", "1", "--beta2", "3", "--format", "xml"}).code,
            qheat::cli::kUsage);
  EXPECT_EQ(invoke({"dist", "--beta1", "1", "--beta2", "3", "--kmax", "2.5"}).code,
            qheat::cli::kUsage);
  EXPECT_EQ(invoke({}).code, qheat::cli::kUsage);
}

TEST(Dist, NumericErrorNamesKernelError) {
  const auto r = invoke({"dist", "--beta1", "1", "--beta2", "3", "--tau", "0.1", "--kmax", "10"});
  EXPECT_EQ(r.code, qheat::cli::kNumeric);
  EXPECT_NE(r.err.find("AliasingDetected"), std::string::npos);
}

TEST(Cumulants, GridCsv) {
  const auto r = invoke({"cumulants", "--beta1", "1", "--beta2", "3", "--tau-grid", "0:8:0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 162u);
  EXPECT_EQ(rows[0],
            (std::vector<std::string>{"tau", "mean", "variance", "mean_inf", "variance_inf"}));
  EXPECT_EQ(std::stod(rows[1][1]), 0.0);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_GE(std::stod(rows[i][2]), std::stod(rows[i - 1][2]));
  }
}

TEST(Cumulants, SinglePointAndDescending) {
  EXPECT_EQ(invoke({"cumulants", "--beta1", "1", "--beta2", "3", "--tau-grid", "2:2:1"}).code, 0);
  EXPECT_EQ(invoke({"cumulants", "--beta1", "1", "--beta2", "3", "--tau-grid", "8:0:0.05"}).code,
            qheat::cli::kUsage);
}

TEST(Verify, SingleCheckReport) {
  const auto r = invoke({"verify", "--suite", "fluctuation_asymptotic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["checks"].size(), 1u);
  EXPECT_TRUE(doc["checks"][0]["pass"].get<bool>());
}

TEST(Verify, StrictProfileTightens) {
  const auto r = invoke({"verify", "--suite", "normalization", "--tol-profile", "strict"});
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(doc["checks"][0]["tolerance"].get<double>(), 1e-11);
}

TEST(Verify, UnknownCheck) {
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, qheat::cli::kUsage);
}

}  // namespace
