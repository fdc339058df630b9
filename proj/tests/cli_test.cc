// Copyright 2026 The hwalks Authors.
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

#include "cli.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hwalks/builders.h"
#include "hwalks/spec_file.h"
#include "test_support.h"

namespace hwalks::cli {
namespace {

using ::hwalks::testing::O;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = Run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hwalks_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, WalkTextTree) {
  Result r = RunCli({"walk", "--seq", "builtin:minimal-fs:w^2", "--n", "1",
                     "--tuple", "w+3,w*2"});
  EXPECT_EQ(r.status, kOk) << r.err;
  EXPECT_EQ(r.out,
            "<> +(w+3,w*2) [splitting,extreme]\n"
            "  <0> +(w+3,w+3) [terminal,extreme]\n");
}

TEST_F(CliTest, WalkFormatsAndOutFile) {
  Result dot = RunCli({"walk", "--seq", "maximal:w^2", "--n", "2", "--tuple",
                       "w,w*2,w*3", "--format", "dot", "--out", Path("t.dot")});
  EXPECT_EQ(dot.status, kOk);
  EXPECT_TRUE(dot.out.empty());
  std::ifstream f(Path("t.dot"));
  std::string first;
  std::getline(f, first);
  EXPECT_EQ(first, "digraph walk {");

  Result json = RunCli({"walk", "--seq", "maximal:w^2", "--n", "2", "--tuple",
                        "(w,w*2,w*3)", "--format", "json"});
  EXPECT_EQ(json.status, kOk);
  EXPECT_NE(json.out.find("\"dim\": 2"), std::string::npos);
}

TEST_F(CliTest, ArityAndParseErrorsAreUsageErrors) {
  EXPECT_EQ(RunCli({"walk", "--seq", "maximal:w^2", "--n", "2", "--tuple", "5"}).status,
            kUsage);
  EXPECT_EQ(RunCli({"walk", "--seq", "maximal:w^2", "--tuple", "w+"}).status, kUsage);
  EXPECT_EQ(RunCli({"walk", "--seq", "maximal:w^2", "--tuple", "w^2,w^2"}).status, kUsage);
  EXPECT_EQ(RunCli({"walk", "--tuple", "1,2"}).status, kUsage);
  EXPECT_EQ(RunCli({"nonsense"}).status, kUsage);
  EXPECT_EQ(RunCli({"walk", "--seq", "no/such/file.ncs", "--tuple", "1,2"}).status, kUsage);
  EXPECT_EQ(RunCli({"walk", "--seq", "maximal:w^2", "--tuple", "1,2", "--format", "png"})
                .status,
            kUsage);
}

TEST_F(CliTest, NodeCapIsStatusThree) {
  Result r = RunCli({"walk", "--seq", "minimal-fs:w^2", "--n", "2", "--tuple",
                     "3,7,w*2", "--node-cap", "2"});
  EXPECT_EQ(r.status, kResourceCap);
  EXPECT_NE(r.err.find("exceeds"), std::string::npos);
}

TEST_F(CliTest, Rho2AndResh) {
  EXPECT_EQ(RunCli({"rho2", "--seq", "minimal-fs:w^2", "--tuple", "w+3,w*2"}).out, "2\n");
  EXPECT_EQ(RunCli({"rho2", "--seq", "maximal:w^2", "--n", "2", "--tuple", "w,w*2,w*3",
                    "--sign", "-1"})
                .out,
            "-1\n");
  EXPECT_EQ(RunCli({"resh", "--seq", "maximal:w^2", "--n", "2", "--tuple", "w,w*2,w*3"}).out,
            "+2[w*3] -1[w*2]\n");
}

TEST_F(CliTest, SuitePassesAndFilters) {
  Result r = RunCli({"suite", "--seq", "builtin:maximal:w^2", "--n", "2", "--instances", "30"});
  EXPECT_EQ(r.status, kOk);
  EXPECT_NE(r.out.find("SUMMARY"), std::string::npos);

  Result only = RunCli({"suite", "--seq", "maximal:w^2", "--n", "2", "--lemmas",
                        "restart", "--instances", "4"});
  EXPECT_EQ(only.status, kOk);
  std::istringstream lines(only.out);
  int lemma_lines = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("LEMMA ", 0) == 0) {
      ++lemma_lines;
      EXPECT_EQ(line.rfind("LEMMA restart instance=", 0), 0u) << line;
    }
  }
  EXPECT_EQ(lemma_lines, 4);

  EXPECT_EQ(RunCli({"suite", "--seq", "maximal:w^2", "--lemmas", "bogus"}).status, kUsage);
}

TEST_F(CliTest, SuiteOnMutatedFileFails) {
  auto base = BuildMaximal(2, O("w*5"));
  Mutation m = MutateOneClub(base, O("w*5"), 3);
  {
    std::ofstream f(Path("mutated.ncs"));
    f << PrintSpecFile(SpecFromSeq(*m.seq, O("w*5")));
  }
  Result coh = RunCli({"coherence", "--seq", Path("mutated.ncs")});
  EXPECT_EQ(coh.status, kVerificationFailure);
  EXPECT_NE(coh.out.find("VIOLATION"), std::string::npos);

  Result r = RunCli({"suite", "--seq", Path("mutated.ncs"), "--instances", "20"});
  EXPECT_EQ(r.status, kVerificationFailure);
  EXPECT_NE(r.out.find("verdict=fail"), std::string::npos);
  EXPECT_NE(r.out.find("  | "), std::string::npos);
}

TEST_F(CliTest, GenerateGameRoundTrips) {
  Result g = RunCli({"generate", "game", "--n", "2", "--rounds", "40", "--seed", "7",
                     "--out", Path("game.ncs")});
  ASSERT_EQ(g.status, kOk) << g.err;
  EXPECT_EQ(RunCli({"parse-check", Path("game.ncs")}).status, kOk);
  EXPECT_EQ(RunCli({"coherence", "--seq", Path("game.ncs")}).status, kOk);

  Result printed = RunCli({"parse-check", Path("game.ncs"), "--print"});
  {
    std::ofstream f(Path("again.ncs"));
    f << printed.out;
  }
  EXPECT_EQ(RunCli({"parse-check", Path("again.ncs"), "--print"}).out, printed.out);
  // The transcript is kept as comments.
  EXPECT_NE(printed.out.find("# "), std::string::npos);
}

TEST_F(CliTest, GenerateRuleBuiltAndSteppedUp) {
  Result om = RunCli({"generate", "order-minimal", "--n", "3", "--lambda", "w^3",
                      "--out", Path("om.ncs")});
  ASSERT_EQ(om.status, kOk);
  EXPECT_EQ(RunCli({"rho2", "--seq", Path("om.ncs"), "--n", "1", "--tuple", "w+3,w*2"}).out,
            "2\n");

  Result su = RunCli({"generate", "stepped-up", "--d", "minimal-fs:w^2", "--e",
                      "minimal-fs:w", "--kappa", "w", "--s", "w*2", "--window", "w*4",
                      "--out", Path("su.ncs")});
  ASSERT_EQ(su.status, kOk) << su.err;
  EXPECT_EQ(RunCli({"coherence", "--seq", Path("su.ncs")}).status, kOk);
  EXPECT_EQ(RunCli({"generate", "stepped-up", "--kappa", "w"}).status, kUsage);
}

TEST_F(CliTest, ParseCheckReportsPosition) {
  {
    std::ofstream f(Path("bad.ncs"));
    f << "ncseq n=2 domain=interval(w^2)\nindex (w := interval(w)\n";
  }
  Result r = RunCli({"parse-check", Path("bad.ncs")});
  EXPECT_EQ(r.status, kUsage);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, BuiltinsAreCoherent) {
  for (const char* kind : {"maximal:", "minimal-fs:"}) {
    for (const auto& [n, lambda] : std::vector<std::pair<std::string, std::string>>{
             {"1", "w^2"}, {"2", "w^2"}, {"3", "w^3"}}) {
      Result r = RunCli({"coherence", "--seq", std::string(kind) + lambda, "--n", n});
      EXPECT_EQ(r.status, kOk) << kind << lambda << " n=" << n << "\n" << r.out;
    }
  }
}

}  // namespace
}  // namespace hwalks::cli
