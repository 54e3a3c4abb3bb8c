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

#include "causalforge/pair_sampling.hpp"

#include <algorithm>

#include "causalforge/common.hpp"

namespace cforge {

std::vector<std::pair<int, int>> sample_pairs(std::span<const int> c1, std::span<const int> c2,
                                              int budget_cap, std::span<const double> relevance,
                                              std::uint64_t seed) {
  if (c1.empty() || c2.empty()) throw ContractViolation("sample_pairs: empty feature list");
  if (budget_cap < 0) throw ContractViolation("sample_pairs: negative budget");
  auto rel = [&](int f) {
    if (f < 0 || f >= static_cast<int>(relevance.size())) {
      throw ContractViolation("sample_pairs: feature without relevance");
    }
    return std::max(relevance[static_cast<std::size_t>(f)], 0.0);
  };
  std::vector<std::pair<int, int>> pool;
  std::vector<double> weight;
  for (int a : c1) {
    for (int b : c2) {
      if (a == b) continue;
      pool.emplace_back(a, b);
      weight.push_back(rel(a) * rel(b));
    }
  }
  const std::size_t budget = std::min(pool.size(), static_cast<std::size_t>(budget_cap));
  Rng rng = make_rng(seed);
  std::vector<std::pair<int, int>> out;
  out.reserve(budget);
  while (out.size() < budget) {
    double total = 0.0;
    for (double w : weight) total += w;
    std::size_t pick = 0;
    if (total > 0.0) {
      const double u = uniform01(rng) * total;
      double acc = 0.0;
      pick = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (weight[i] <= 0.0) continue;
        acc += weight[i];
        pick = i;
        if (u < acc) break;
      }
    } else {
      pick = uniform_index(rng, pool.size());
    }
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace cforge
