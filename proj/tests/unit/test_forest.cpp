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

#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/forest.hpp"
#include "causalforge/split.hpp"

namespace cforge {
namespace {

std::vector<Eigen::Index> range(Eigen::Index lo, Eigen::Index hi) {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(hi - lo));
  std::iota(out.begin(), out.end(), lo);
  return out;
}

TEST(Forest, SeparableSingleFeature) {
  Eigen::MatrixXd X(40, 1);
  Eigen::VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    X(i, 0) = static_cast<double>(i);
    y(i) = i < 20 ? 0.0 : 1.0;
  }
  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  RandomForest f;
  f.fit(X, y, TaskKind::kClassification, 2, cfg, 1);
  EXPECT_EQ(f.predict(X), y);
  EXPECT_DOUBLE_EQ(f.importances()(0), 1.0);
}

TEST(Forest, LeakedTargetScoresNearOne) {
  Rng rng = make_rng(2);
  Eigen::MatrixXd X(300, 3);
  Eigen::VectorXd y(300);
  for (Eigen::Index i = 0; i < 300; ++i) {
    y(i) = normal01(rng);
    X(i, 0) = y(i);
    X(i, 1) = normal01(rng);
    X(i, 2) = normal01(rng);
  }
  const auto train = range(0, 200), val = range(200, 300);
  const double score = evaluate(X, y, TaskKind::kRegression, 1, train, val, ForestConfig{}, 3);
  EXPECT_GT(score, 0.9);
}

TEST(Forest, NoiseFeatureIsChance) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(seed, 5);
    Eigen::MatrixXd X(200, 1);
    Eigen::VectorXd y(200);
    for (Eigen::Index i = 0; i < 200; ++i) {
      X(i, 0) = normal01(rng);
      y(i) = i % 2;
    }
    total += evaluate(X, y, TaskKind::kClassification, 2, range(0, 150), range(150, 200), fast_forest_config(), seed);
  }
  EXPECT_NEAR(total / 10.0, 0.5, 0.1);
}

TEST(Forest, InformativeFeatureDominatesImportance) {
  Rng rng = make_rng(6);
  Eigen::MatrixXd X(300, 5);
  Eigen::VectorXd y(300);
  for (Eigen::Index i = 0; i < 300; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) X(i, j) = normal01(rng);
    y(i) = X(i, 2) > 0.0 ? 1.0 : 0.0;
  }
  RandomForest f;
  f.fit(X, y, TaskKind::kClassification, 2, ForestConfig{}, 7);
  EXPECT_GT(f.importances()(2), 0.5);
  EXPECT_NEAR(f.importances().sum(), 1.0, 1e-12);
}

TEST(Forest, NoiseColumnBarelyMovesScore) {
  Rng rng = make_rng(8);
  Eigen::MatrixXd X(400, 3);
  Eigen::VectorXd y(400);
  for (Eigen::Index i = 0; i < 400; ++i) {
    X(i, 0) = normal01(rng);
    X(i, 1) = normal01(rng);
    X(i, 2) = normal01(rng);
    y(i) = 2.0 * X(i, 0) - X(i, 1) + 0.1 * normal01(rng);
  }
  const auto train = range(0, 300), val = range(300, 400);
  const double with_noise = evaluate(X, y, TaskKind::kRegression, 1, train, val, ForestConfig{}, 9);
  const double without = evaluate(X.leftCols(2), y, TaskKind::kRegression, 1, train, val, ForestConfig{}, 9);
  EXPECT_LT(std::abs(with_noise - without), 0.05);
}

TEST(Forest, DeterministicAndDetailed) {
  Rng rng = make_rng(10);
  Eigen::MatrixXd X(120, 4);
  Eigen::VectorXd y(120);
  for (Eigen::Index i = 0; i < 120; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) X(i, j) = normal01(rng);
    y(i) = X(i, 0) * X(i, 1);
  }
  const auto train = range(0, 90), val = range(90, 120);
  const ForestEvaluation a = evaluate_detailed(X, y, TaskKind::kRegression, 1, train, val, fast_forest_config(), 4);
  const ForestEvaluation b = evaluate_detailed(X, y, TaskKind::kRegression, 1, train, val, fast_forest_config(), 4);
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.importances, b.importances);
  EXPECT_GT(a.train_score, a.score);
  EXPECT_EQ(a.score, evaluate(X, y, TaskKind::kRegression, 1, train, val, fast_forest_config(), 4));
}

TEST(Forest, ConstantClassIsTrivial) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(20, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(20);
  RandomForest f;
  f.fit(X, y, TaskKind::kClassification, 1, ForestConfig{}, 1);
  EXPECT_EQ(f.predict(X), y);
  EXPECT_EQ(f.importances(), Eigen::VectorXd::Zero(2));
}

TEST(Forest, CrossValidateOverFolds) {
  Dataset ds;
  ds.task = TaskKind::kClassification;
  ds.class_count = 2;
  Rng rng = make_rng(11);
  ds.X.resize(100, 2);
  ds.y.resize(100);
  for (Eigen::Index i = 0; i < 100; ++i) {
    ds.X(i, 0) = normal01(rng);
    ds.X(i, 1) = normal01(rng);
    ds.y(i) = ds.X(i, 0) > 0 ? 1 : 0;
  }
  ds.feature_names = {"a", "b"};
  const double cv = cross_validate(ds, fast_forest_config(), 3, 5);
  EXPECT_GT(cv, 0.85);
  const SplitPlan plan = split_stratified(ds, 0.2, 5, 3);
  double manual = 0.0;
  for (std::size_t k = 0; k < plan.folds.size(); ++k) {
    manual += evaluate(ds.X, ds.y, ds.task, 2, plan.folds[k].first, plan.folds[k].second, fast_forest_config(),
                       mix_seed(3, k));
  }
  EXPECT_NEAR(cross_validate(ds.X, ds.y, ds.task, 2, plan, fast_forest_config(), 3), manual / 5.0, 1e-12);
}

}  // namespace
}  // namespace cforge
