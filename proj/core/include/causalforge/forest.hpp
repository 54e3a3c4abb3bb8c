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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"
#include "causalforge/split.hpp"

namespace cforge {

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 10;
  int min_split = 2;
  int features_per_split = 0;  // 0 means ceil(sqrt(feature count))
  bool bootstrap = true;
};

/// Inner-loop configuration: same trees, fewer of them.
inline ForestConfig fast_forest_config() {
  ForestConfig c;
  c.n_trees = 25;
  return c;
}

class RandomForest {
 public:
  /// CART trees on bootstrap resamples. Splits minimize Gini impurity
  /// (classification) or squared error (regression) at midpoints between
  /// consecutive distinct values; equal gains prefer the lower feature index,
  /// then the lower threshold.
  void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, TaskKind task, int class_count,
           const ForestConfig& config, std::uint64_t seed);

  /// Class labels (as doubles) or regression means.
  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

  /// Total impurity decrease per feature, normalized to sum 1; all zeros when
  /// no tree split.
  const Eigen::VectorXd& importances() const { return importances_; }

  TaskKind task() const { return task_; }
  std::size_t tree_count() const { return trees_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf = -1;  // offset into leaf_values
  };
  struct Tree {
    std::vector<Node> nodes;
    std::vector<double> leaf_values;  // class distribution or a single mean
  };

  class Builder;

  TaskKind task_ = TaskKind::kRegression;
  int class_count_ = 1;
  Eigen::Index feature_count_ = 0;
  std::vector<Tree> trees_;
  Eigen::VectorXd importances_;
};

/// Fits on the train rows and scores the validation rows with macro-F1 or
/// 1 - RAE.
double evaluate(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, TaskKind task,
                int class_count, std::span<const Eigen::Index> train_idx,
                std::span<const Eigen::Index> val_idx, const ForestConfig& config,
                std::uint64_t seed);

struct ForestEvaluation {
  double score = 0.0;        // validation rows
  double train_score = 0.0;  // training rows, when requested
  Eigen::VectorXd importances;
};

/// evaluate() plus the fitted forest's importances and, optionally, its
/// score on the training rows.
ForestEvaluation evaluate_detailed(const Eigen::MatrixXd& features, const Eigen::VectorXd& y,
                                   TaskKind task, int class_count,
                                   std::span<const Eigen::Index> train_idx,
                                   std::span<const Eigen::Index> val_idx,
                                   const ForestConfig& config, std::uint64_t seed,
                                   bool with_train_score = true);

/// Mean score over the folds of a split plan.
double cross_validate(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, TaskKind task,
                      int class_count, const SplitPlan& plan, const ForestConfig& config,
                      std::uint64_t seed);

/// Mean validation score over `folds` stratified folds (5 by default).
double cross_validate(const Dataset& data, const ForestConfig& config, std::uint64_t seed,
                      int folds = 5);

}  // namespace cforge
