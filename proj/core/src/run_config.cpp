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

#include "causalforge/run_config.hpp"

#include <string>

#include "causalforge/common.hpp"

namespace cforge {

std::string_view to_string(GroupingMode m) {
  switch (m) {
    case GroupingMode::kCausal:
      return "causal";
    case GroupingMode::kCorrelation:
      return "correlation";
    case GroupingMode::kRandom:
      return "random";
  }
  return "causal";
}

std::string_view to_string(ExplorationMode m) {
  switch (m) {
    case ExplorationMode::kAdaptive:
      return "adaptive";
    case ExplorationMode::kCausalOnly:
      return "causal-only";
    case ExplorationMode::kMiOnly:
      return "mi-only";
  }
  return "adaptive";
}

std::string_view to_string(RewardMode m) {
  switch (m) {
    case RewardMode::kFull:
      return "full";
    case RewardMode::kNoCausal:
      return "no-causal";
    case RewardMode::kNoDiversity:
      return "no-diversity";
    case RewardMode::kNoComplexity:
      return "no-complexity";
  }
  return "full";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const Enum (&values)[N], std::string_view what) {
  std::string options;
  for (Enum v : values) {
    if (to_string(v) == text) return v;
    if (!options.empty()) options += "|";
    options += to_string(v);
  }
  throw ParseError("unknown " + std::string(what) + " '" + std::string(text) + "' (expected " +
                       options + ")",
                   0, 0);
}

}  // namespace

GroupingMode parse_grouping(std::string_view text) {
  constexpr GroupingMode kAll[] = {GroupingMode::kCausal, GroupingMode::kCorrelation,
                                   GroupingMode::kRandom};
  return parse_enum(text, kAll, "grouping");
}

ExplorationMode parse_exploration(std::string_view text) {
  constexpr ExplorationMode kAll[] = {ExplorationMode::kAdaptive, ExplorationMode::kCausalOnly,
                                      ExplorationMode::kMiOnly};
  return parse_enum(text, kAll, "exploration");
}

RewardMode parse_reward_mode(std::string_view text) {
  constexpr RewardMode kAll[] = {RewardMode::kFull, RewardMode::kNoCausal,
                                 RewardMode::kNoDiversity, RewardMode::kNoComplexity};
  return parse_enum(text, kAll, "reward mode");
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ContractViolation(std::string("RunConfig: ") + what);
  };
  require(max_episodes >= 0, "episodes must be non-negative");
  require(max_steps >= 1, "steps must be positive");
  require(early_stop_delta >= 0.0, "early_stop_delta must be non-negative");
  require(early_stop_patience >= 1, "early_stop_patience must be positive");
  require(val_frac > 0.0 && val_frac < 1.0, "val_frac must be in (0, 1)");
  require(!lambda_grid.empty(), "lambda_grid must not be empty");
  for (double l : lambda_grid) require(l > 0.0, "lambda_grid entries must be positive");
  require(tau >= 0.0, "tau must be non-negative");
  require(ensemble_size >= 1, "ensemble_size must be positive");
  require(group_cap >= 0, "group_cap must be non-negative");
  require(feature_cap >= 0, "feature_cap must be non-negative");
  require(pair_budget >= 1, "pair_budget must be positive");
  require(min_per_group >= 0, "min_per_group must be non-negative");
  require(reward_params.alpha >= 0.0, "alpha must be non-negative");
  require(agent.batch_size >= 1, "batch_size must be positive");
  require(agent.gamma >= 0.0 && agent.gamma <= 1.0, "gamma must be in [0, 1]");
  require(agent.network.learning_rate > 0.0, "learning_rate must be positive");
  require(buffer_ceiling >= 1, "buffer_ceiling must be positive");
  require(step_forest.n_trees >= 1 && final_forest.n_trees >= 1, "forests need at least one tree");
  require(final_folds >= 2, "final_folds must be at least 2");
}

std::vector<ConfigVariant> ablation_variants(const RunConfig& base) {
  std::vector<ConfigVariant> out;
  auto add = [&](std::string name, auto change) {
    RunConfig c = base;
    change(c);
    out.push_back({std::move(name), std::move(c)});
  };
  add("full", [](RunConfig&) {});
  add("correlation-grouping", [](RunConfig& c) { c.grouping = GroupingMode::kCorrelation; });
  add("random-grouping", [](RunConfig& c) { c.grouping = GroupingMode::kRandom; });
  add("causal-only", [](RunConfig& c) { c.exploration = ExplorationMode::kCausalOnly; });
  add("mi-only", [](RunConfig& c) { c.exploration = ExplorationMode::kMiOnly; });
  add("no-causal-reward", [](RunConfig& c) { c.reward = RewardMode::kNoCausal; });
  add("no-diversity", [](RunConfig& c) { c.reward = RewardMode::kNoDiversity; });
  add("no-complexity", [](RunConfig& c) { c.reward = RewardMode::kNoComplexity; });
  add("random-transform", [](RunConfig& c) {
    c.grouping = GroupingMode::kRandom;
    c.exploration = ExplorationMode::kMiOnly;
  });
  return out;
}

}  // namespace cforge
