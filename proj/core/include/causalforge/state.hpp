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

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"
#include "causalforge/operators.hpp"

namespace cforge {

inline constexpr int kPrimaryStateSize = 24;
inline constexpr int kGroupCount = 3;
inline constexpr int kOperatorStateSize = kPrimaryStateSize + kGroupCount;         // 27
inline constexpr int kSecondaryStateSize = kOperatorStateSize + kOperatorCount + 1;  // 43

/// Dataset-level block: log n, log d, classification bit, missing rate, class
/// balance (min/max class frequency, 1 for regression), mean pairwise |rho|,
/// mean |rho(x, y)|, 1 - median univariate R^2.
std::array<double, 8> summarize_dataset(const Dataset& data);

struct StateContext {
  std::array<double, 8> data_summary{};

  double train_score = 0.0;
  double val_score = 0.0;
  std::vector<double> step_scores;  // validation score after each step, oldest first
  int step = 0;                     // within the episode
  int max_steps = 1;
  double best_score = 0.0;
  int episode = 0;
  int max_episodes = 1;
  bool binary_classification = false;

  int original_count = 0;
  int generated_count = 0;  // generated this episode, before pruning
  int selected_count = 0;   // generated columns currently retained
  double mean_importance = 0.0;
  std::vector<double> column_variances;  // current feature set
};

/// 24 entries: data (8), performance (6), features (7), auxiliary (3).
/// Scores are clamped to [0, 1]; counts and variances are log1p-compressed.
Eigen::VectorXf build_state_primary(const StateContext& ctx);

/// Appends a one-hot of the chosen group.
Eigen::VectorXf build_state_operator(const Eigen::VectorXf& primary, int group);

/// Appends a one-hot of the chosen operator and its arity (1 = binary).
Eigen::VectorXf build_state_secondary(const Eigen::VectorXf& op_state, OpId op);

}  // namespace cforge
