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

#include <deque>
#include <span>
#include <vector>

#include "causalforge/digraph.hpp"

namespace cforge {

struct RoleWeights {
  double direct = 1.0;
  double indirect = 0.6;
  double other = 0.2;

  double of(CausalRole role) const;
};

struct RewardParams {
  double alpha = 0.5;
  double lambda_div = 0.05;
  double lambda_comp = 0.001;
  double per_feature = 0.001;  // complexity weight on the generated count
  double per_depth = 0.01;     // complexity weight on summed depth
  RoleWeights weights;
  // Multiply negative rewards by (1 + alpha psi) instead of dividing.
  bool literal_negative_branch = false;
};

struct RewardBreakdown {
  double r_perf = 0.0;
  double psi = 0.0;
  double entropy = 0.0;
  double complexity = 0.0;
  double total = 0.0;
};

/// 100 * delta / max(baseline, 1e-6) for improvements, else
/// -10 * |delta / max(baseline, 1e-6)|.
double perf_reward(double score_t, double score_prev, double baseline);

/// Importance-weighted mean role weight; 0 when no importance is positive.
double causal_bonus(std::span<const CausalRole> roles, std::span<const double> importances,
                    const RoleWeights& weights = {});

/// Shannon entropy (nats) of the action counts in `window`; 0 when empty.
double entropy_bonus(std::span<const int> window);

/// per_feature * count + per_depth * sum(depths).
double complexity_penalty(std::span<const int> depths, const RewardParams& params = {});

double total_reward(double r_perf, double psi, double entropy, double complexity,
                    const RewardParams& params = {});

RewardBreakdown compose_reward(double r_perf, double psi, double entropy, double complexity,
                               const RewardParams& params = {});

/// Last `capacity` operator actions.
class ActionWindow {
 public:
  explicit ActionWindow(std::size_t capacity = 20) : capacity_(capacity) {}
  void push(int action);
  std::span<const int> view();
  std::size_t size() const { return items_.size(); }
  void clear() { items_.clear(); }

 private:
  std::size_t capacity_;
  std::deque<int> items_;
  std::vector<int> flat_;
};

}  // namespace cforge
