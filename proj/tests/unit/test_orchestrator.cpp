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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/orchestrator.hpp"
#include "causalforge/scm.hpp"

namespace cforge {
namespace {

Dataset small_scm(std::uint64_t seed) {
  ScmSpec spec;
  spec.d = 6;
  spec.n = 200;
  spec.nonlinearity = Nonlinearity::kQuadratic;
  return generate_scm(spec, seed).data;
}

RunConfig small_config(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.max_episodes = 3;
  cfg.max_steps = 4;
  cfg.lambda_grid = {0.05};
  cfg.step_forest.n_trees = 8;
  cfg.final_forest.n_trees = 16;
  cfg.final_folds = 3;
  return cfg;
}

TEST(Termination, Examples) {
  RunConfig cfg;
  LoopState s;
  s.feature_cap = 100;
  s.episodes_completed = 3;
  s.improvements = {0.0005, 0.0004, 0.0003};
  EXPECT_EQ(check_termination(s, cfg), Termination::kEarlyStop);
  s.improvements = {0.0005, 0.02, 0.0003};
  EXPECT_EQ(check_termination(s, cfg), std::nullopt);
  s.improvements = {0.0005, 0.0004};
  EXPECT_EQ(check_termination(s, cfg), std::nullopt);
  s.episodes_completed = 30;
  EXPECT_EQ(check_termination(s, cfg), Termination::kMaxEpisodes);
  s.feature_count = 101;
  s.improvements = {0.0, 0.0, 0.0};
  EXPECT_EQ(check_termination(s, cfg), Termination::kFeatureCap);
  EXPECT_EQ(to_string(Termination::kEarlyStop), "early stop");
}

TEST(Orchestrator, ZeroEpisodesReturnsOriginals) {
  const Dataset ds = small_scm(1);
  RunConfig cfg = small_config(1);
  cfg.max_episodes = 0;
  const RunResult r = run(ds, cfg);
  EXPECT_TRUE(r.recipes.empty());
  EXPECT_EQ(r.features, ds.X);
  EXPECT_EQ(r.feature_names, ds.feature_names);
  EXPECT_EQ(r.report.termination, Termination::kMaxEpisodes);
  EXPECT_TRUE(r.report.episodes.empty());
  EXPECT_EQ(r.report.final_cv, r.report.baseline_cv);
  EXPECT_EQ(r.report.episodes_to_95, 0);
}

TEST(Orchestrator, RunInvariants) {
  const Dataset ds = small_scm(2);
  const RunConfig cfg = small_config(2);
  const RunResult r = run(ds, cfg);
  const RunReport& rep = r.report;
  EXPECT_EQ(rep.grouping_source, "notears");
  EXPECT_FALSE(rep.phase1_fallback);
  ASSERT_FALSE(rep.episodes.empty());
  EXPECT_LE(rep.episodes.size(), 3u);
  double previous = rep.baseline_score;
  for (const auto& e : rep.episodes) {
    EXPECT_GE(e.running_best, previous);
    previous = e.running_best;
  }
  EXPECT_EQ(rep.best_score, std::max(rep.baseline_score, rep.episodes.back().running_best));
  for (const auto& s : rep.steps) {
    EXPECT_GE(s.group, 0);
    EXPECT_LT(s.group, 3);
    EXPECT_EQ(s.secondary_group >= 0, is_binary(op_from_index(s.op)));
  }
  // The kept columns are exactly the recipes evaluated on the raw features.
  EXPECT_EQ(apply_recipes(ds.X, r.recipes), r.features);
  EXPECT_EQ(r.features.cols(), ds.cols() + static_cast<Eigen::Index>(r.recipes.size()));
  EXPECT_EQ(static_cast<int>(r.recipes.size()), rep.best_generated);
  std::set<std::string> unique;
  for (const auto& rec : r.recipes) unique.insert(serialize_recipe(rec));
  EXPECT_EQ(unique.size(), r.recipes.size());
  EXPECT_GE(rep.episodes_to_95, 1);
}

TEST(Orchestrator, Deterministic) {
  const Dataset ds = small_scm(3);
  const RunResult a = run(ds, small_config(3));
  const RunResult b = run(ds, small_config(3));
  EXPECT_EQ(a.recipes, b.recipes);
  EXPECT_EQ(a.report.final_cv, b.report.final_cv);
  ASSERT_EQ(a.report.steps.size(), b.report.steps.size());
  for (std::size_t k = 0; k < a.report.steps.size(); ++k) {
    EXPECT_EQ(a.report.steps[k].reward.total, b.report.steps[k].reward.total);
  }
}

TEST(Orchestrator, RewardModesZeroTheirTerm) {
  const Dataset ds = small_scm(4);
  RunConfig cfg = small_config(4);
  cfg.reward = RewardMode::kNoCausal;
  for (const auto& s : run(ds, cfg).report.steps) EXPECT_EQ(s.reward.psi, 0.0);
  cfg.reward = RewardMode::kNoDiversity;
  for (const auto& s : run(ds, cfg).report.steps) EXPECT_EQ(s.reward.entropy, 0.0);
  cfg.reward = RewardMode::kNoComplexity;
  for (const auto& s : run(ds, cfg).report.steps) EXPECT_EQ(s.reward.complexity, 0.0);
}

TEST(Orchestrator, AlternativeGroupings) {
  const Dataset ds = small_scm(5);
  RunConfig cfg = small_config(5);
  cfg.grouping = GroupingMode::kRandom;
  cfg.exploration = ExplorationMode::kMiOnly;
  const RunResult r = run(ds, cfg);
  EXPECT_EQ(r.report.grouping_source, "random");
  for (const auto& s : r.report.steps) EXPECT_EQ(s.strategy, Strategy::kMi);
  cfg.grouping = GroupingMode::kCorrelation;
  cfg.exploration = ExplorationMode::kCausalOnly;
  const RunResult c = run(ds, cfg);
  EXPECT_EQ(c.report.grouping_source, "correlation");
  for (const auto& s : c.report.steps) EXPECT_EQ(s.strategy, Strategy::kCausal);
}

TEST(Orchestrator, DiscoveryFailureFallsBackToCorrelation) {
  const Dataset ds = small_scm(6);
  RunConfig cfg = small_config(6);
  cfg.max_episodes = 1;
  cfg.notears.max_dual_iters = 1;  // cannot converge
  const RunResult r = run(ds, cfg);
  EXPECT_TRUE(r.report.phase1_fallback);
  EXPECT_EQ(r.report.grouping_source, "correlation");
  EXPECT_FALSE(r.report.phase1_message.empty());
}

TEST(Orchestrator, FindsKnownInteraction) {
  double gain = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng = make_rng(seed, 77);
    Dataset ds;
    ds.X.resize(400, 5);
    ds.y.resize(400);
    for (Eigen::Index i = 0; i < 400; ++i) {
      for (Eigen::Index j = 0; j < 5; ++j) ds.X(i, j) = normal01(rng);
      ds.y(i) = ds.X(i, 1) * ds.X(i, 2) + 0.1 * normal01(rng);
    }
    ds.feature_names = {"x0", "x1", "x2", "x3", "x4"};
    RunConfig cfg;
    cfg.seed = seed;
    cfg.max_episodes = 4;
    cfg.max_steps = 8;
    cfg.step_forest.n_trees = 10;
    cfg.final_forest.n_trees = 20;
    cfg.final_folds = 3;
    const RunResult r = run(ds, cfg);
    gain += r.report.best_score - r.report.baseline_score;
  }
  EXPECT_GE(gain / 5.0, 0.05);
}

}  // namespace
}  // namespace cforge
