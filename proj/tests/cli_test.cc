// tests/cli_test.cc

// Copyright 2026  vtlnbias authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Runs the command-line tool end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult RunCli(const std::string &args) {
  const std::string cmd = std::string(VTLNBIAS_CLI) + " " + args + " 2>&1";
  RunResult r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.output.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t CountLines(const std::string &s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vtlnbias_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const std::string &name) const { return (dir_ / name).string(); }
  void Synth(int speakers) {
    const auto r = RunCli("synth-corpus --out-dir " + P("syn") + " --speakers " +
                       std::to_string(speakers));
    ASSERT_EQ(r.code, 0) << r.output;
  }
  fs::path dir_;
};

TEST_F(Cli, BiasReportReproducesPublishedTable) {
  const auto r = RunCli(std::string("bias-report --wer-table ") + VTLNBIAS_DATA +
                     "/wer_by_group.tsv");
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("None | None                 31.62  26.62    29.12"),
            std::string::npos)
      << r.output;
  EXPECT_NE(r.output.find("28.66  21.74    25.20"), std::string::npos);
}

TEST_F(Cli, BiasReportWritesArtifacts) {
  const auto r = RunCli(std::string("bias-report --wer-table ") + VTLNBIAS_DATA +
                     "/wer_by_group.tsv --csv " + P("b.csv") + " --html " +
                     P("b.html") + " --shaded-csv " + P("s.csv"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(CountLines(Slurp(P("b.csv"))), 8u);
  EXPECT_NE(Slurp(P("b.html")).find("<table"), std::string::npos);
  EXPECT_EQ(Slurp(P("s.csv")).rfind(",", 0), 0u);
}

TEST_F(Cli, ExitCodes) {
  auto r = RunCli("");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.output.rfind("error: code=1 kind=usage", 0), 0u) << r.output;
  r = RunCli("bias-report --wer-table " + P("missing.tsv"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("kind=data"), std::string::npos);
  EXPECT_EQ(CountLines(r.output), 1u);
  std::ofstream(P("bad.yaml")) << "bogus_key: 1\n";
  r = RunCli("--config " + P("bad.yaml") + " config");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("kind=config"), std::string::npos);
}

TEST_F(Cli, ConfigRoundTrips) {
  auto r = RunCli("--seed 9 config");
  ASSERT_EQ(r.code, 0);
  std::ofstream(P("c.yaml")) << r.output;
  const auto again = RunCli("--config " + P("c.yaml") + " config");
  EXPECT_EQ(again.output, r.output);
  EXPECT_NE(r.output.find("seed: 9"), std::string::npos);
}

TEST_F(Cli, SpeedAugmentationTriplesCorpus) {
  Synth(10);
  const auto r = RunCli("augment speed --manifest " + P("syn/manifest.tsv") +
                     " --out-dir " + P("sp") + " --out-manifest " + P("sp.tsv"));
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string m = Slurp(P("sp.tsv"));
  EXPECT_EQ(CountLines(m), 30u);
  EXPECT_NE(m.find("#sp0.9\t"), std::string::npos);
  EXPECT_NE(m.find("#sp1.1\t"), std::string::npos);
  EXPECT_EQ(RunCli("corpus validate --manifest " + P("sp.tsv")).code, 0);
}

TEST_F(Cli, SpecAugmentIsSeeded) {
  Synth(3);
  const std::string man = " --manifest " + P("syn/manifest.tsv");
  ASSERT_EQ(RunCli("features extract" + man + " --out " + P("f.ark")).code, 0);
  ASSERT_EQ(RunCli("--seed 4 augment specaug --in " + P("f.ark") + " --out " + P("a.ark")).code, 0);
  ASSERT_EQ(RunCli("--seed 4 augment specaug --in " + P("f.ark") + " --out " + P("b.ark")).code, 0);
  ASSERT_EQ(RunCli("--seed 5 augment specaug --in " + P("f.ark") + " --out " + P("c.ark")).code, 0);
  EXPECT_EQ(Slurp(P("a.ark")), Slurp(P("b.ark")));
  EXPECT_NE(Slurp(P("a.ark")), Slurp(P("c.ark")));
  EXPECT_EQ(RunCli("features extract" + man + " --out " + P("x.ark") + " --kind nope").code, 1);
}

TEST_F(Cli, VtlnPipeline) {
  Synth(12);
  const std::string man = " --manifest " + P("syn/manifest.tsv");
  auto r = RunCli("vtln train" + man + " --components 4 --out " + P("m.bin"));
  ASSERT_EQ(r.code, 0) << r.output;
  r = RunCli("vtln estimate" + man + " --model " + P("m.bin") + " --out " + P("w.tsv"));
  ASSERT_EQ(r.code, 0) << r.output;
  std::istringstream in(Slurp(P("w.tsv")));
  std::string id;
  double alpha, score;
  int n = 0;
  while (in >> id >> alpha >> score) {
    ++n;
    EXPECT_GE(alpha, 0.8 - 1e-9);
    EXPECT_LE(alpha, 1.2 + 1e-9);
    const double steps = (alpha - 0.8) / 0.02;
    EXPECT_NEAR(steps, std::round(steps), 1e-6);
  }
  EXPECT_EQ(n, 12);
  r = RunCli("vtln apply" + man + " --warps " + P("w.tsv") + " --out " + P("wf.ark"));
  EXPECT_EQ(r.code, 0) << r.output;
  r = RunCli("plot warp" + man + " --warps " + P("w.tsv") + " --out " + P("w.svg"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(Slurp(P("w.svg")).find("class=\"reference\""), std::string::npos);
  r = RunCli("vtln estimate" + man + " --model " + P("w.tsv") + " --out " + P("x.tsv"));
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, ScoreThenBiasReport) {
  std::ofstream(P("m.tsv")) << "n1\ta.wav\ta b c d\ts1\tNorm\tRead\n"
                               "d1\tb.wav\ta b c d\ts2\tDC\tRead\n";
  std::ofstream(P("h.tsv")) << "n1\ta b c x\nd1\ta x\n";
  auto r = RunCli("score --manifest " + P("m.tsv") + " --hyp " + P("h.tsv") +
               " --out " + P("s.tsv"));
  ASSERT_EQ(r.code, 0) << r.output;
  r = RunCli("bias-report --scores " + P("s.tsv") + " --detail");
  ASSERT_EQ(r.code, 0) << r.output;
  // Norm 25 %, DC 75 %.
  EXPECT_NE(r.output.find("50.00"), std::string::npos) << r.output;
  std::ofstream(P("h2.tsv")) << "n1\ta b c x\n";
  r = RunCli("score --manifest " + P("m.tsv") + " --hyp " + P("h2.tsv"));
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, PlotBias) {
  const auto r = RunCli(std::string("plot bias --wer-table ") + VTLNBIAS_DATA +
                     "/wer_by_group.tsv --models 1,3,5 --out " + P("b.svg"));
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string svg = Slurp(P("b.svg"));
  std::size_t bars = 0, pos = 0;
  while ((pos = svg.find("class=\"bar\"", pos)) != std::string::npos) ++bars, ++pos;
  EXPECT_EQ(bars, 15u);
}

}  // namespace
