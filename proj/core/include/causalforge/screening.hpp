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
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"
#include "causalforge/digraph.hpp"

namespace cforge {

inline constexpr int kMiBins = 10;

/// Equal-frequency bin codes. Values are ranked (ties by row), position r gets
/// bin floor(r * bins / n), and every tied value shares the bin of the first
/// member of its run.
std::vector<int> equal_frequency_bins(std::span<const double> x,
                                      int bins = kMiBins);

/// Plug-in mutual information (nats) between two discrete codings.
double mutual_information(std::span<const int> a, std::span<const int> b);

/// Target coding used for MI: labels for classification, equal-frequency
/// bins for regression.
std::vector<int> target_codes(const Eigen::VectorXd& y, TaskKind task);

double mutual_information(std::span<const double> x,
                          std::span<const int> target);

int count_distinct(std::span<const int> codes);

/// min(floor(sqrt(d)), 15), at least 1.
int default_group_cap(int d);

struct CausalGroups {
  std::vector<CausalRole> role_of;             // one per original feature
  std::array<std::vector<int>, kRoleCount> screened;  // ascending feature index
  int k_g = 1;
  std::vector<double> mi_scores;               // one per original feature
  std::array<bool, kRoleCount> used_fallback{};

  const std::vector<int>& group(CausalRole role) const {
    return screened[static_cast<std::size_t>(role)];
  }
};

/// Groups of size <= k_g pass through; larger groups keep their k_g features
/// with the highest MI with y (ties to the lower index). A group containing a
/// feature with fewer than two occupied bins is ranked by |Pearson| instead.
CausalGroups screen_groups(std::span<const CausalRole> roles,
                           const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           TaskKind task, int k_g);

}  // namespace cforge
