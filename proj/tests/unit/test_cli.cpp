#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "../support/workspace.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CORRVIEW_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    workspace::write_planted_corpus(tmp / "corpus.jsonl");
    common = "--corpus " + (tmp / "corpus.jsonl").string() + " -T 4 --sweeps 30 --seed 9";
  }

  workspace::TempDir tmp;
  std::string common;
};

TEST_F(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("train --corpus " + (tmp / "missing.jsonl").string()), 2);
  EXPECT_EQ(run("train " + common + " --scheme verbs"), 2);
  EXPECT_EQ(run("train " + common + " --threshold 2"), 2);
  EXPECT_EQ(run("evaluate --checkpoint " + (tmp / "missing.json").string()), 2);
  EXPECT_EQ(run("sweep " + common + " --topics-range 5:1"), 2);
  EXPECT_EQ(run("train -c " + (tmp / "missing.json").string()), 2);
}

TEST_F(Cli, HelpExitsWithZero) { EXPECT_EQ(run("--help"), 0); }

TEST_F(Cli, TrainEvaluateGroups) {
  const std::string out = (tmp / "run").string();
  ASSERT_EQ(run("train " + common + " -o " + out), 0);
  const std::string ck = (tmp / "run" / "checkpoint.json").string();
  const std::string first = workspace::read_file(ck);
  EXPECT_EQ(workspace::data_lines(tmp / "run" / "loglik.csv"), 31u);
  ASSERT_EQ(run("train " + common + " -o " + out), 0);
  EXPECT_EQ(workspace::read_file(ck), first);

  EXPECT_EQ(run("evaluate --checkpoint " + ck), 0);
  EXPECT_TRUE(std::filesystem::exists(tmp / "run" / "cv_report.json"));
  EXPECT_EQ(run("evaluate --checkpoint " + ck + " --mode aspects -o " + (tmp / "aspects").string()), 0);
  EXPECT_EQ(run("evaluate --checkpoint " + ck + " --mode everything"), 2);
  EXPECT_EQ(run("groups --checkpoint " + ck), 0);
  EXPECT_TRUE(std::filesystem::exists(tmp / "run" / "groups.txt"));
}

TEST_F(Cli, SweepAndStats) {
  const std::string out = (tmp / "sweep").string();
  ASSERT_EQ(run("sweep " + common + " --topics-range 2:4 --schemes opinion+ne,ne -o " + out), 0);
  EXPECT_EQ(workspace::data_lines(tmp / "sweep" / "sweep.csv"), 1u + 3u * 2u);
  ASSERT_EQ(run("stats " + common + " --schemes opinion,adj+ne -o " + out), 0);
  EXPECT_NE(workspace::read_file(tmp / "sweep" / "stats.json").find("adj+ne"), std::string::npos);
  ASSERT_EQ(run("accuracy-curve " + common + " --model lda --topics-range 2,3 -o " + out), 0);
  EXPECT_EQ(workspace::data_lines(tmp / "sweep" / "accuracy_curve.csv"), 3u);
}

}  // namespace
