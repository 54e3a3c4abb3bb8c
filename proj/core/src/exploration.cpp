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

#include "causalforge/exploration.hpp"

#include <algorithm>
#include <numeric>

#include "causalforge/pair_sampling.hpp"

namespace cforge {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kCausal:
      return "causal";
    case Strategy::kMi:
      return "mi";
    case Strategy::kRandom:
      return "random";
  }
  return "random";
}

StrategyWeights adapt_weights(std::span<const double> history, int episode) {
  if (episode <= 5 || history.size() < 6) return {0.5, 0.3, 0.2};
  const std::size_t n = history.size();
  double trend = 0.0;
  for (std::size_t i = n - 5; i < n; ++i) trend += history[i] - history[i - 1];
  trend /= 5.0;
  if (trend > kTrendThreshold) return {0.7, 0.2, 0.1};
  if (trend < -kTrendThreshold) return {0.4, 0.3, 0.3};
  return {0.5, 0.3, 0.2};
}

Strategy sample_strategy(const StrategyWeights& w, Rng& rng) {
  const double total = w.causal + w.mi + w.random;
  if (!(total > 0.0)) throw ContractViolation("sample_strategy: weights sum to zero");
  const double u = uniform01(rng) * total;
  if (u < w.causal) return Strategy::kCausal;
  if (u < w.causal + w.mi || w.random <= 0.0) return Strategy::kMi;
  return Strategy::kRandom;
}

bool FeaturePools::all_empty() const {
  return std::all_of(members.begin(), members.end(), [](const auto& m) { return m.empty(); });
}

namespace {

std::vector<int> pool_or_union(const FeaturePools& pools, int g) {
  if (g < 0 || g >= kRoleCount) throw ContractViolation("causal_hierarchical_sample: group out of range");
  if (!pools.group(g).empty()) return pools.group(g);
  std::vector<int> all;
  for (const auto& m : pools.members) all.insert(all.end(), m.begin(), m.end());
  std::sort(all.begin(), all.end());
  return all;
}

double relevance_of(const FeaturePools& pools, int f) {
  if (f < 0 || f >= static_cast<int>(pools.relevance.size())) {
    throw ContractViolation("causal_hierarchical_sample: feature without relevance");
  }
  return pools.relevance[static_cast<std::size_t>(f)];
}

std::vector<int> top_by_relevance(const FeaturePools& pools, std::vector<int> pool) {
  std::stable_sort(pool.begin(), pool.end(),
                   [&](int a, int b) { return relevance_of(pools, a) > relevance_of(pools, b); });
  pool.resize(std::min<std::size_t>(pool.size(), kMiTopK));
  return pool;
}

int uniform_member(const std::vector<int>& pool, Rng& rng) {
  return pool[uniform_index(rng, pool.size())];
}

}  // namespace

Selection causal_hierarchical_sample(const FeaturePools& pools, Strategy strategy, bool binary,
                                     int primary_group, int secondary_group, int pair_budget,
                                     Rng& rng) {
  if (pools.all_empty()) throw ContractViolation("causal_hierarchical_sample: every group is empty");
  Selection out;
  if (!binary) {
    if (strategy == Strategy::kCausal) {
      const auto& direct = pools.group(static_cast<int>(CausalRole::kDirect));
      const auto& other = pools.group(static_cast<int>(CausalRole::kOther));
      const std::vector<int>* pool = nullptr;
      if (!direct.empty() && !other.empty()) {
        pool = uniform01(rng) < kCausalDirectShare ? &direct : &other;
      } else if (!direct.empty()) {
        pool = &direct;
      } else if (!other.empty()) {
        pool = &other;
      }
      if (pool != nullptr) {
        out.unary_sources.push_back(uniform_member(*pool, rng));
        return out;
      }
      out.unary_sources.push_back(uniform_member(pool_or_union(pools, primary_group), rng));
      return out;
    }
    std::vector<int> pool = pool_or_union(pools, primary_group);
    if (strategy == Strategy::kMi) pool = top_by_relevance(pools, std::move(pool));
    out.unary_sources.push_back(uniform_member(pool, rng));
    return out;
  }

  std::vector<int> left = pool_or_union(pools, primary_group);
  std::vector<int> right = pool_or_union(pools, secondary_group);
  if (strategy == Strategy::kMi) {
    left = top_by_relevance(pools, std::move(left));
    right = top_by_relevance(pools, std::move(right));
  }
  std::vector<double> weight(pools.relevance.size(), 1.0);
  if (strategy == Strategy::kCausal) {
    constexpr int kD = static_cast<int>(CausalRole::kDirect);
    constexpr int kI = static_cast<int>(CausalRole::kIndirect);
    const bool boosted = (primary_group == kD && (secondary_group == kD || secondary_group == kI)) ||
                         (primary_group == kI && secondary_group == kD);
    for (std::size_t f = 0; f < weight.size(); ++f) {
      weight[f] = std::max(pools.relevance[f], 0.0) * (boosted ? 2.0 : 1.0);
    }
  }
  const bool has_pair = left.size() > 1 || right.size() > 1 || left.front() != right.front();
  if (has_pair) out.pairs = sample_pairs(left, right, pair_budget, weight, rng());
  return out;
}

}  // namespace cforge
