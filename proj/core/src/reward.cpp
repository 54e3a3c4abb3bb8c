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

#include "causalforge/reward.hpp"

#include <cmath>
#include <map>

#include "causalforge/common.hpp"

namespace cforge {

double RoleWeights::of(CausalRole role) const {
  switch (role) {
    case CausalRole::kDirect:
      return direct;
    case CausalRole::kIndirect:
      return indirect;
    case CausalRole::kOther:
      return other;
  }
  return other;
}

double perf_reward(double score_t, double score_prev, double baseline) {
  const double scaled = (score_t - score_prev) / std::max(baseline, 1e-6);
  if (score_t > score_prev) return 100.0 * scaled;
  return -10.0 * std::abs(scaled);
}

double causal_bonus(std::span<const CausalRole> roles, std::span<const double> importances,
                    const RoleWeights& weights) {
  if (roles.size() != importances.size()) throw ContractViolation("causal_bonus: length mismatch");
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (importances[i] < 0.0) throw ContractViolation("causal_bonus: negative importance");
    total += importances[i];
    weighted += weights.of(roles[i]) * importances[i];
  }
  return total > 0.0 ? weighted / total : 0.0;
}

double entropy_bonus(std::span<const int> window) {
  if (window.empty()) return 0.0;
  std::map<int, double> counts;
  for (int a : window) counts[a] += 1.0;
  const auto n = static_cast<double>(window.size());
  double h = 0.0;
  for (const auto& [action, c] : counts) h -= c / n * std::log(c / n);
  return std::max(h, 0.0);
}

double complexity_penalty(std::span<const int> depths, const RewardParams& params) {
  double depth_sum = 0.0;
  for (int d : depths) depth_sum += d;
  return params.per_feature * static_cast<double>(depths.size()) + params.per_depth * depth_sum;
}

double total_reward(double r_perf, double psi, double entropy, double complexity,
                    const RewardParams& params) {
  const double modulation = 1.0 + params.alpha * psi;
  double shaped = r_perf * modulation;
  if (r_perf < 0.0 && !params.literal_negative_branch) shaped = r_perf / modulation;
  return shaped + params.lambda_div * entropy - params.lambda_comp * complexity;
}

RewardBreakdown compose_reward(double r_perf, double psi, double entropy, double complexity,
                               const RewardParams& params) {
  return {r_perf, psi, entropy, complexity, total_reward(r_perf, psi, entropy, complexity, params)};
}

void ActionWindow::push(int action) {
  items_.push_back(action);
  while (items_.size() > capacity_) items_.pop_front();
}

std::span<const int> ActionWindow::view() {
  flat_.assign(items_.begin(), items_.end());
  return flat_;
}

}  // namespace cforge
