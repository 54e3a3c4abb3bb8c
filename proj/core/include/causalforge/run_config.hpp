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
#include <string>
#include <string_view>
#include <vector>

#include "causalforge/dqn.hpp"
#include "causalforge/forest.hpp"
#include "causalforge/notears.hpp"
#include "causalforge/reward.hpp"

namespace cforge {

enum class GroupingMode { kCausal, kCorrelation, kRandom };
enum class ExplorationMode { kAdaptive, kCausalOnly, kMiOnly };
enum class RewardMode { kFull, kNoCausal, kNoDiversity, kNoComplexity };

std::string_view to_string(GroupingMode m);
std::string_view to_string(ExplorationMode m);
std::string_view to_string(RewardMode m);
GroupingMode parse_grouping(std::string_view text);
ExplorationMode parse_exploration(std::string_view text);
RewardMode parse_reward_mode(std::string_view text);

struct RunConfig {
  // loop
  int max_episodes = 30;
  int max_steps = 15;
  double early_stop_delta = 0.001;
  int early_stop_patience = 3;
  std::uint64_t seed = 0;
  double val_frac = 0.2;

  // discovery
  std::vector<double> lambda_grid = {0.01, 0.03, 0.05};
  double tau = 0.1;
  bool ensemble = false;
  int ensemble_size = 10;
  NotearsOptions notears;

  // features
  int group_cap = 0;    // 0: min(floor(sqrt(d)), 15)
  int feature_cap = 0;  // 0: min(800, 5 d)
  int pair_budget = 50;
  int min_per_group = 1;

  // ablations
  GroupingMode grouping = GroupingMode::kCausal;
  ExplorationMode exploration = ExplorationMode::kAdaptive;
  RewardMode reward = RewardMode::kFull;

  RewardParams reward_params;
  AgentConfig agent;
  int buffer_ceiling = 50000;

  ForestConfig step_forest = fast_forest_config();
  ForestConfig final_forest;
  int final_folds = 5;

  /// Throws ContractViolation naming the first bad field.
  void validate() const;
};

struct ConfigVariant {
  std::string name;
  RunConfig config;
};

/// `base` followed by one single-axis change per ablation (correlation and
/// random grouping, causal-only and MI-only exploration, each reward term
/// removed) and the random-transform baseline (random grouping, MI-only).
std::vector<ConfigVariant> ablation_variants(const RunConfig& base);

/// Sets one `section.key` entry from its textual value; throws ParseError
/// for unknown keys or malformed values.
void set_config_value(RunConfig& cfg, std::string_view section, std::string_view key,
                      std::string_view value);

/// Applies a sectioned key=value document (`[phase1]` headers, `#` or `;`
/// comments) on top of `cfg`.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// The effective configuration in the same format.
std::string dump_config(const RunConfig& cfg);

}  // namespace cforge
