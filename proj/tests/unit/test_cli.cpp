/* Copyright 2026 The causalforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "../../tools/cli.hpp"
#include "causalforge/dataset.hpp"

namespace cforge {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "causalforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void synth(const std::string& sub) {
    const Outcome o = invoke({"--seed", "3", "--out", path(sub), "synth", "--d", "5", "--n", "120"});
    ASSERT_EQ(o.code, 0) << o.err;
  }

  fs::path dir_;
};

const std::vector<std::string> kSmall = {"--set", "run.episodes=2", "--set", "run.steps=3",
                                         "--set", "evaluator.step_trees=6", "--set", "evaluator.final_trees=8",
                                         "--set", "evaluator.folds=3", "--set", "phase1.lambda_grid=0.05"};

std::vector<std::string> with_small(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), kSmall.begin(), kSmall.end());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"synth", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({"--set", "run.nothing=1", "synth", "--out", path("x")}).code, 1);
  EXPECT_EQ(invoke({"--set", "noequals", "synth"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, RuntimeErrorsExitTwo) {
  std::ofstream(path("bad.csv")) << "a,b\n1,2\n3,4\n";
  const Outcome o = invoke({"discover", "--input", path("bad.csv"), "--target", "y"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, SynthAndDiscover) {
  synth("data");
  EXPECT_TRUE(fs::exists(path("data/data.csv")));
  EXPECT_TRUE(fs::exists(path("data/adjacency.csv")));
  const Outcome o = invoke(with_small({"--out", path("disc")},
                                      {"discover", "--input", path("data/data.csv"), "--truth",
                                       path("data/adjacency.csv")}));
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("edge_f1"), std::string::npos);
  for (const char* f : {"weights.csv", "dag.csv", "roles.csv"}) EXPECT_TRUE(fs::exists(dir_ / "disc" / f)) << f;
}

TEST_F(CliTest, EngineerTransformRoundTrip) {
  synth("data");
  const Outcome e = invoke(with_small({"--seed", "4", "--out", path("run")},
                                      {"engineer", "--input", path("data/data.csv")}));
  ASSERT_EQ(e.code, 0) << e.err;
  const Outcome t = invoke({"--out", path("tx"), "transform", "--input", path("data/data.csv"), "--recipes",
                            path("run/recipes.txt"), "--target", "y"});
  ASSERT_EQ(t.code, 0) << t.err;
  const Dataset best = load_csv(path("run/best_features.csv"), "y", TaskKind::kRegression);
  const Dataset tx = load_csv(path("tx/transformed.csv"), "y", TaskKind::kRegression);
  EXPECT_EQ(tx.X, best.X);
  EXPECT_EQ(tx.y, best.y);
  // Determinism: same config and seed give identical files.
  ASSERT_EQ(invoke(with_small({"--seed", "4", "--out", path("run2")},
                              {"engineer", "--input", path("data/data.csv")})).code, 0);
  EXPECT_EQ(slurp(path("run/report.csv")), slurp(path("run2/report.csv")));
  EXPECT_EQ(slurp(path("run/recipes.txt")), slurp(path("run2/recipes.txt")));
}

TEST_F(CliTest, TransformRejectsOutOfRangeRecipe) {
  synth("data");
  std::ofstream(path("r.txt")) << "sin(src:40)\n";
  EXPECT_EQ(invoke({"--out", path("tx"), "transform", "--input", path("data/data.csv"), "--recipes", path("r.txt"),
                    "--target", "y"}).code, 2);
  std::ofstream(path("bad.txt")) << "sin(src:1\n";
  EXPECT_EQ(invoke({"--out", path("tx"), "transform", "--input", path("data/data.csv"), "--recipes",
                    path("bad.txt")}).code, 2);
}

TEST_F(CliTest, ConfigPrecedence) {
  synth("data");
  std::ofstream(path("cfg.ini")) << "[run]\nseed = 11\nepisodes = 1\nsteps = 2\n[evaluator]\nfolds = 3\n"
                                    "step_trees = 4\nfinal_trees = 4\n[phase1]\nlambda_grid = 0.05\n";
  // File only.
  ASSERT_EQ(invoke({"--config", path("cfg.ini"), "--out", path("a"), "engineer", "--input",
                    path("data/data.csv")}).code, 0);
  const std::string a = slurp(path("a/config.ini"));
  EXPECT_NE(a.find("seed = 11"), std::string::npos);
  EXPECT_NE(a.find("steps = 2"), std::string::npos);
  // --set beats the file, --seed beats both.
  ASSERT_EQ(invoke({"--config", path("cfg.ini"), "--set", "run.steps=1", "--set", "run.seed=12", "--seed", "13",
                    "--out", path("b"), "engineer", "--input", path("data/data.csv")}).code, 0);
  const std::string b = slurp(path("b/config.ini"));
  EXPECT_NE(b.find("steps = 1"), std::string::npos);
  EXPECT_NE(b.find("seed = 13"), std::string::npos);
}

TEST_F(CliTest, Evaluate) {
  synth("data");
  const Outcome o = invoke({"--set", "evaluator.final_trees=5", "evaluate", "--input", path("data/data.csv"),
                            "--folds", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("one_minus_rae ", 0), 0u);
}

}  // namespace
}  // namespace cforge
