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
#include <string_view>
#include <utility>
#include <vector>

#include "causalforge/common.hpp"
#include "causalforge/digraph.hpp"

namespace cforge {

enum class Strategy { kCausal = 0, kMi = 1, kRandom = 2 };

std::string_view to_string(Strategy s);

struct StrategyWeights {
  double causal = 0.5;
  double mi = 0.3;
  double random = 0.2;

  bool operator==(const StrategyWeights&) const = default;
};

inline constexpr double kTrendThreshold = 0.01;

/// Default (0.5, 0.3, 0.2) through episode 5 or with fewer than six scores;
/// otherwise the mean of the last five score differences picks
/// (0.7, 0.2, 0.1) above the threshold, (0.4, 0.3, 0.3) below its negative.
StrategyWeights adapt_weights(std::span<const double> history, int episode);

Strategy sample_strategy(const StrategyWeights& w, Rng& rng);

/// Current feature ids per causal group and a relevance score per feature id.
struct FeaturePools {
  std::array<std::vector<int>, kRoleCount> members;
  std::vector<double> relevance;

  const std::vector<int>& group(int g) const { return members[static_cast<std::size_t>(g)]; }
  bool all_empty() const;
};

struct Selection {
  std::vector<int> unary_sources;          // one entry for unary steps
  std::vector<std::pair<int, int>> pairs;  // binary steps
};

inline constexpr double kCausalDirectShare = 0.7;
inline constexpr int kMiTopK = 3;

/// Picks concrete operands inside the groups the agents chose.
///  causal, unary:  C_direct with probability 0.7, else C_other (the other
///                  pool when one is empty), uniform within the pool.
///  causal, binary: relevance-weighted pairs across the two chosen groups,
///                  weights doubled when the groups are {direct, indirect} or
///                  {direct, direct}.
///  mi:             uniform over the top min(3, |group|) relevance features.
///  random:         uniform over the chosen group(s).
/// An empty chosen group is replaced by the union of all groups.
Selection causal_hierarchical_sample(const FeaturePools& pools, Strategy strategy, bool binary,
                                     int primary_group, int secondary_group, int pair_budget,
                                     Rng& rng);

}  // namespace cforge
