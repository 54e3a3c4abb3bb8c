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

#include <cmath>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/state.hpp"

namespace cforge {
namespace {

TEST(State, DatasetSummary) {
  Dataset ds;
  ds.task = TaskKind::kClassification;
  ds.class_count = 2;
  ds.X.resize(1000, 20);
  ds.y.resize(1000);
  Rng rng = make_rng(1);
  for (Eigen::Index k = 0; k < ds.X.size(); ++k) ds.X.data()[k] = normal01(rng);
  for (Eigen::Index i = 0; i < 1000; ++i) ds.y(i) = i < 250 ? 1.0 : 0.0;
  ds.missing_rate = 0.125;
  const auto s = summarize_dataset(ds);
  EXPECT_NEAR(s[0], 6.9078, 1e-4);
  EXPECT_NEAR(s[1], 2.9957, 1e-4);
  EXPECT_EQ(s[2], 1.0);
  EXPECT_EQ(s[3], 0.125);
  EXPECT_NEAR(s[4], 250.0 / 750.0, 1e-15);
  EXPECT_LT(s[5], 0.1);  // independent columns
  EXPECT_GT(s[7], 0.9);  // labels unrelated to X
}

TEST(State, SummaryOfPerfectPredictor) {
  Dataset ds;
  ds.X.resize(50, 2);
  ds.y.resize(50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    ds.X(i, 0) = static_cast<double>(i);
    ds.X(i, 1) = static_cast<double>(i);
    ds.y(i) = 3.0 * static_cast<double>(i) + 1.0;
  }
  const auto s = summarize_dataset(ds);
  EXPECT_EQ(s[2], 0.0);
  EXPECT_EQ(s[4], 1.0);
  EXPECT_NEAR(s[5], 1.0, 1e-12);
  EXPECT_NEAR(s[6], 1.0, 1e-12);
  EXPECT_NEAR(s[7], 0.0, 1e-12);
}

TEST(State, ColdStartLayout) {
  StateContext ctx;
  ctx.max_steps = 15;
  ctx.max_episodes = 30;
  const Eigen::VectorXf s = build_state_primary(ctx);
  ASSERT_EQ(s.size(), kPrimaryStateSize);
  EXPECT_EQ(s(10), 0.0f);
  EXPECT_EQ(s(11), 0.0f);
  EXPECT_EQ(s(12), 0.0f);
  EXPECT_EQ(s(13), 0.0f);
}

TEST(State, PerformanceAndAuxiliaryEntries) {
  StateContext ctx;
  ctx.train_score = 1.7;  // clamped
  ctx.val_score = 0.6;
  ctx.step_scores = {0.5, 0.52, 0.51, 0.55, 0.6};
  ctx.step = 3;
  ctx.max_steps = 12;
  ctx.episode = 6;
  ctx.max_episodes = 30;
  ctx.binary_classification = true;
  ctx.original_count = 20;
  ctx.generated_count = 10;
  ctx.selected_count = 4;
  ctx.mean_importance = 0.05;
  ctx.column_variances = {std::exp(1.0) - 1.0, std::exp(3.0) - 1.0};
  const Eigen::VectorXf s = build_state_primary(ctx);
  EXPECT_EQ(s(8), 1.0f);
  EXPECT_FLOAT_EQ(s(9), 0.6f);
  EXPECT_FLOAT_EQ(s(10), 0.05f);   // latest difference
  EXPECT_FLOAT_EQ(s(11), 0.04f);
  EXPECT_FLOAT_EQ(s(12), -0.01f);  // oldest of the three
  EXPECT_FLOAT_EQ(s(13), 0.25f);
  EXPECT_FLOAT_EQ(s(14), static_cast<float>(std::log1p(20.0)));
  EXPECT_FLOAT_EQ(s(15), static_cast<float>(std::log1p(10.0)));
  EXPECT_FLOAT_EQ(s(16), static_cast<float>(std::log1p(4.0)));
  EXPECT_FLOAT_EQ(s(17), 0.4f);
  EXPECT_FLOAT_EQ(s(18), 0.05f);
  EXPECT_FLOAT_EQ(s(19), 2.0f);  // mean of log1p variances {1, 3}
  EXPECT_FLOAT_EQ(s(20), 1.0f);
  EXPECT_FLOAT_EQ(s(21), 0.2f);
  // Population variance of the last five scores.
  double mean = 0.0;
  for (double x : ctx.step_scores) mean += x / 5.0;
  double var = 0.0;
  for (double x : ctx.step_scores) var += (x - mean) * (x - mean) / 5.0;
  EXPECT_FLOAT_EQ(s(22), static_cast<float>(var));
  EXPECT_EQ(s(23), 1.0f);
}

TEST(State, BestScoreWithoutHistory) {
  StateContext ctx;
  ctx.best_score = 0.7;
  EXPECT_FLOAT_EQ(build_state_primary(ctx)(22), 0.7f);
}

TEST(State, OneHotExtensions) {
  const Eigen::VectorXf primary = Eigen::VectorXf::LinSpaced(kPrimaryStateSize, 1.0f, 24.0f);
  const Eigen::VectorXf op_state = build_state_operator(primary, 0);
  ASSERT_EQ(op_state.size(), 27);
  EXPECT_EQ(op_state.head(24), primary);
  EXPECT_EQ(op_state.tail(3), Eigen::Vector3f(1, 0, 0));
  const Eigen::VectorXf unary = build_state_secondary(op_state, OpId::kCos);
  ASSERT_EQ(unary.size(), 43);
  EXPECT_EQ(unary(27 + 4), 1.0f);
  EXPECT_EQ(unary.segment(27, 15).sum(), 1.0f);
  EXPECT_EQ(unary(42), 0.0f);
  EXPECT_EQ(build_state_secondary(op_state, OpId::kMul)(42), 1.0f);
  EXPECT_THROW(build_state_operator(primary, 3), ContractViolation);
  EXPECT_THROW(build_state_secondary(primary, OpId::kAdd), ContractViolation);
}

TEST(State, NonFiniteEntriesBecomeZero) {
  StateContext ctx;
  ctx.data_summary[3] = std::nan("");
  EXPECT_EQ(build_state_primary(ctx)(3), 0.0f);
}

}  // namespace
}  // namespace cforge
