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
#include <utility>
#include <vector>

namespace cforge {

inline constexpr int kPairBudgetCap = 50;

/// Draws min(budget_cap, |pairs|) ordered pairs (a, b), a from c1 and b from
/// c2, a != b, without replacement. Each draw picks a remaining pair with
/// probability proportional to relevance[a] * relevance[b], or uniformly when
/// every remaining weight is zero. `relevance` is indexed by feature id.
std::vector<std::pair<int, int>> sample_pairs(std::span<const int> c1, std::span<const int> c2,
                                              int budget_cap, std::span<const double> relevance,
                                              std::uint64_t seed);

}  // namespace cforge
