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

#include "causalforge/pruning.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "causalforge/common.hpp"
#include "causalforge/screening.hpp"

namespace cforge {

int prune_cap(int original_count) { return std::min(800, 5 * original_count); }

std::vector<int> prune_features(const Eigen::MatrixXd& features, std::span<const char> is_original,
                                std::span<const CausalRole> roles,
                                std::span<const int> target_codes, int cap, int min_per_group) {
  const auto m = static_cast<std::size_t>(features.cols());
  if (is_original.size() != m || roles.size() != m) {
    throw ContractViolation("prune_features: one flag and role per column required");
  }
  if (static_cast<std::size_t>(features.rows()) != target_codes.size()) {
    throw ContractViolation("prune_features: row mismatch");
  }
  const auto originals = static_cast<int>(std::count(is_original.begin(), is_original.end(), 1));
  if (cap < originals) throw ContractViolation("prune_features: cap below original feature count");

  std::vector<int> survivors;
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = features.col(static_cast<Eigen::Index>(j));
    const double mean = col.mean();
    const double var = (col.array() - mean).square().mean();
    if (is_original[j] || var >= kMinVariance) survivors.push_back(static_cast<int>(j));
  }
  if (static_cast<int>(survivors.size()) <= cap) return survivors;

  std::vector<int> kept;
  std::vector<int> generated;
  for (int j : survivors) {
    (is_original[static_cast<std::size_t>(j)] ? kept : generated).push_back(j);
  }
  std::vector<double> mi(m, 0.0);
  for (int j : generated) {
    const auto col = features.col(j);
    mi[static_cast<std::size_t>(j)] = mutual_information(
        std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), target_codes);
  }
  std::stable_sort(generated.begin(), generated.end(), [&](int a, int b) {
    return mi[static_cast<std::size_t>(a)] > mi[static_cast<std::size_t>(b)];
  });

  std::array<int, kRoleCount> per_role{};
  for (int j : kept) ++per_role[static_cast<std::size_t>(roles[static_cast<std::size_t>(j)])];
  std::vector<char> taken(m, 0);
  int slots = cap - static_cast<int>(kept.size());
  for (int g = 0; g < kRoleCount && slots > 0; ++g) {
    for (int j : generated) {
      if (slots == 0 || per_role[static_cast<std::size_t>(g)] >= min_per_group) break;
      if (static_cast<int>(roles[static_cast<std::size_t>(j)]) != g) continue;
      kept.push_back(j);
      taken[static_cast<std::size_t>(j)] = 1;
      ++per_role[static_cast<std::size_t>(g)];
      --slots;
    }
  }
  for (int j : generated) {
    if (slots == 0) break;
    if (taken[static_cast<std::size_t>(j)]) continue;
    kept.push_back(j);
    --slots;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace cforge
