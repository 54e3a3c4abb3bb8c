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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"
#include "causalforge/digraph.hpp"
#include "causalforge/exploration.hpp"
#include "causalforge/recipe.hpp"
#include "causalforge/reward.hpp"
#include "causalforge/run_config.hpp"
#include "causalforge/screening.hpp"

namespace cforge {

enum class Termination { kEarlyStop, kFeatureCap, kMaxEpisodes };

std::string_view to_string(Termination t);

struct LoopState {
  int episodes_completed = 0;
  std::vector<double> improvements;  // running-best gain of each completed episode
  int feature_count = 0;             // largest post-pruning count so far
  int feature_cap = 0;
};

/// Stop reasons in priority order: feature count above the cap, the last
/// `early_stop_patience` improvements all below `early_stop_delta`, the
/// episode budget spent.
std::optional<Termination> check_termination(const LoopState& state, const RunConfig& cfg);

struct StructureDiscovery {
  Eigen::MatrixXd W;  // over the features followed by the target
  double lambda = 0.0;
  std::vector<double> lambdas;
  std::vector<double> bic;
  Digraph dag;
  int removed_edges = 0;
  std::vector<CausalRole> roles;  // one per feature
  bool ensemble = false;
  Eigen::MatrixXd edge_probability;  // ensemble mode only
  double mean_confidence = 1.0;
};

/// NOTEARS with BIC lambda selection over [X, y], DAG extraction and role
/// assignment; in ensemble mode roles come from bootstrap edge frequencies.
StructureDiscovery discover_structure(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      const RunConfig& cfg);

struct StepRecord {
  int episode = 0;  // 1-based
  int step = 0;     // 1-based
  int group = 0;
  int op = 0;
  int secondary_group = -1;  // -1 on unary steps
  Strategy strategy = Strategy::kCausal;
  int generated = 0;      // new distinct columns this step
  int feature_count = 0;  // after pruning
  double score = 0.0;
  RewardBreakdown reward;
};

struct EpisodeRecord {
  int episode = 0;  // 1-based
  double episode_best = 0.0;
  double running_best = 0.0;
  StrategyWeights weights;
  int steps = 0;
  int feature_count = 0;  // at the end of the episode
};

struct RunReport {
  TaskKind task = TaskKind::kRegression;
  int rows = 0;
  int original_count = 0;
  std::uint64_t seed = 0;
  std::string grouping_source;  // notears, ensemble, correlation, random
  bool phase1_fallback = false;
  std::string phase1_message;
  double lambda = 0.0;
  double mean_confidence = 1.0;
  CausalGroups groups;
  double baseline_score = 0.0;  // hold-out score of the original features
  double best_score = 0.0;      // running maximum of the step scores
  double baseline_cv = 0.0;
  double final_cv = 0.0;
  int best_generated = 0;
  std::vector<EpisodeRecord> episodes;
  std::vector<StepRecord> steps;
  Termination termination = Termination::kMaxEpisodes;
  int episodes_to_95 = 0;  // first episode reaching 95% of the final best; 0 if none ran
};

struct RunResult {
  std::vector<FeatureRecipe> recipes;  // generated columns of the best set
  Eigen::MatrixXd features;            // original columns, then generated ones
  std::vector<std::string> feature_names;
  RunReport report;
};

/// Structure discovery followed by the episode loop over the agent cascade.
RunResult run(const Dataset& ds, const RunConfig& cfg);

/// [X, recipe columns] with every recipe evaluated on X.
Eigen::MatrixXd apply_recipes(const Eigen::MatrixXd& X, std::span<const FeatureRecipe> recipes);

}  // namespace cforge
