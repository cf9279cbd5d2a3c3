//
// Copyright 2026 The dphist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dphist/cli.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dphist/compact.hpp"
#include "dphist/histogram.hpp"

namespace dphist {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dphist_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }

  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string WriteDataset(const std::string& body) {
    const std::string path = Path("data.txt");
    std::ofstream out(path);
    out << body;
    return path;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ParseUnitFraction) {
  EXPECT_EQ(ParseUnitFraction("1"), 1u);
  EXPECT_EQ(ParseUnitFraction("1/2"), 2u);
  EXPECT_EQ(ParseUnitFraction("1/1000"), 1000u);
  EXPECT_THROW(ParseUnitFraction("2/3"), std::invalid_argument);
  EXPECT_THROW(ParseUnitFraction("0.5"), std::invalid_argument);
  EXPECT_THROW(ParseUnitFraction("1/"), std::invalid_argument);
  EXPECT_THROW(ParseUnitFraction("1/02"), std::invalid_argument);
}

TEST_F(CliTest, SeededRunsAreByteIdentical) {
  const std::string data = WriteDataset("15 4\n2\n2\n5\n1\n");
  for (const std::string mechanism : {"basic", "pure-sparse", "compact"}) {
    RunConfig config;
    config.mechanism = mechanism;
    config.e_den = 1;
    config.seed_hex = std::string(64, '5');
    config.input_path = data;
    std::ostringstream out1, out2, err;
    config.output_path = Path(mechanism + "_1.out");
    ASSERT_EQ(CmdRun(config, out1, err), kExitOk) << err.str();
    config.output_path = Path(mechanism + "_2.out");
    ASSERT_EQ(CmdRun(config, out2, err), kExitOk) << err.str();
    EXPECT_EQ(Slurp(Path(mechanism + "_1.out")), Slurp(Path(mechanism + "_2.out")));
  }
}

TEST_F(CliTest, StabilityRequiresDelta) {
  const std::string data = WriteDataset("6 4\n2\n2\n5\n1\n");
  RunConfig config;
  config.mechanism = "stability";
  config.e_den = 1;
  config.input_path = data;
  config.output_path = Path("out.hist");
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(config, out, err), kExitUsage);
  EXPECT_NE(err.str().find("delta required"), std::string::npos);
}

TEST_F(CliTest, StabilityRunReportsThreshold) {
  std::string body = "9 40\n";
  for (int i = 0; i < 38; ++i) body += "4\n";
  body += "7\n7\n";
  const std::string data = WriteDataset(body);
  RunConfig config;
  config.mechanism = "stability";
  config.e_den = 1;
  config.delta_den = 100;
  config.seed_hex = std::string(64, '6');
  config.input_path = data;
  config.output_path = Path("stab.hist");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(config, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("threshold:"), std::string::npos);
  EXPECT_NE(out.str().find("privacy: (1/1, 1/100)"), std::string::npos);
  // The heavy bin (count 38) survives thresholding with overwhelming
  // probability; the release parses back canonically.
  const PartialHistogram h = ReadHistogramFile(Path("stab.hist"), 9, 40);
  ASSERT_FALSE(h.entries.empty());
  EXPECT_EQ(h.entries[0].label, 4u);
}

TEST_F(CliTest, UnknownMechanismIsUsageError) {
  const std::string data = WriteDataset("6 2\n2\n2\n");
  RunConfig config;
  config.mechanism = "laplace";
  config.e_den = 1;
  config.input_path = data;
  config.output_path = Path("x");
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(config, out, err), kExitUsage);
}

TEST_F(CliTest, SparseUniverseTooSmallIsInfeasible) {
  const std::string data = WriteDataset("4 2\n2\n2\n");
  RunConfig config;
  config.mechanism = "pure-sparse";
  config.e_den = 1;
  config.input_path = data;
  config.output_path = Path("x");
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(config, out, err), kExitInfeasible);
}

TEST_F(CliTest, MalformedDatasetIsFailure) {
  const std::string data = WriteDataset("6 4\n2\nbogus\n");
  RunConfig config;
  config.mechanism = "basic";
  config.e_den = 1;
  config.input_path = data;
  config.output_path = Path("x");
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(config, out, err), kExitFailure);
}

TEST_F(CliTest, CompactRunReportsFieldAndEvalRoundTrips) {
  const std::string data = WriteDataset("10 2\n4\n9\n");
  RunConfig config;
  config.mechanism = "compact";
  config.e_den = 1;
  config.seed_hex = std::string(64, '7');
  config.input_path = data;
  config.output_path = Path("repr.txt");
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(config, out, err), kExitOk) << err.str();
  // Worked parameters: ell = 2, d0 = 2^18.
  EXPECT_NE(out.str().find("ell=2"), std::string::npos);
  EXPECT_NE(out.str().find("d0=2^18"), std::string::npos);

  // eval agrees with bulk evaluation through the library.
  const CompactHistogramRepr repr = ReadCompactReprFile(Path("repr.txt"));
  const CompactEvaluator evaluator(repr);
  for (uint64_t x = 1; x <= 10; ++x) {
    std::ostringstream eval_out, eval_err;
    ASSERT_EQ(CmdEval(Path("repr.txt"), x, eval_out, eval_err), kExitOk);
    EXPECT_EQ(eval_out.str(), std::to_string(evaluator.Eval(x)) + "\n");
    // Purity: a second eval prints the same.
    std::ostringstream again;
    CmdEval(Path("repr.txt"), x, again, eval_err);
    EXPECT_EQ(again.str(), eval_out.str());
  }
  std::ostringstream eval_out, eval_err;
  EXPECT_EQ(CmdEval(Path("repr.txt"), 11, eval_out, eval_err), kExitUsage);
}

TEST_F(CliTest, PadOutputFixesLineCount) {
  const std::string data = WriteDataset("9 3\n4\n4\n7\n");
  RunConfig config;
  config.mechanism = "pure-sparse";
  config.e_den = 1;
  config.seed_hex = std::string(64, '8');
  config.input_path = data;
  config.output_path = Path("padded.hist");
  config.pad_output = true;
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(config, out, err), kExitOk) << err.str();
  const std::string body = Slurp(Path("padded.hist"));
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 3);
  // Parser skips sentinels.
  const PartialHistogram h = ReadHistogramFile(Path("padded.hist"), 9, 3);
  for (const auto& e : h.entries) EXPECT_GE(e.label, 1u);
}

TEST_F(CliTest, VerifyUnknownSuiteIsUsageError) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdVerify("bogus", 10, std::nullopt, out, err), kExitUsage);
}

TEST_F(CliTest, VerifyCdfSuitePasses) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdVerify("cdf", 10, std::nullopt, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("PASS geo-cdf-exactness"), std::string::npos);
  EXPECT_NE(out.str().find("PASS fast-pmf-exactness"), std::string::npos);
}

TEST_F(CliTest, ReproducibilityChecksPass) {
  for (const auto& check : ChecksReproducibility(dir_.string())) {
    EXPECT_TRUE(check.pass) << check.name << ": " << check.detail;
  }
}

TEST_F(CliTest, MainUsageErrors) {
  const char* argv_bad[] = {"dphist", "run", "--mechanism", "basic"};
  EXPECT_EQ(DphistMain(4, const_cast<char**>(argv_bad)), kExitUsage);
  const char* argv_nosub[] = {"dphist"};
  EXPECT_EQ(DphistMain(1, const_cast<char**>(argv_nosub)), kExitUsage);
}

TEST_F(CliTest, MainRunsEndToEnd) {
  const std::string data = WriteDataset("6 3\n2\n2\n5\n");
  const std::string out_path = Path("e2e.hist");
  const std::string seed(64, '9');
  const char* argv[] = {"dphist",   "run",       "--mechanism", "basic",
                        "--epsilon", "1/2",      "--input",     data.c_str(),
                        "--output",  out_path.c_str(), "--seed", seed.c_str()};
  EXPECT_EQ(DphistMain(12, const_cast<char**>(argv)), kExitOk);
  const PartialHistogram h = ReadHistogramFile(out_path, 6, 3);
  EXPECT_EQ(h.entries.size(), 6u);
}

}  // namespace
}  // namespace dphist
