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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/digraph.hpp"

namespace cforge {

inline constexpr double kMinVariance = 1e-8;

/// min(800, 5 d).
int prune_cap(int original_count);

/// Two-stage pruning over the columns of `features`. Stage 1 drops generated
/// columns with population variance below kMinVariance. Stage 2, when more
/// than `cap` columns survive, keeps every original column and fills the
/// remaining slots with the generated survivors of highest MI with the
/// target (ties to the lower index), first topping up any role that has
/// survivors but fewer than `min_per_group` retained columns.
/// Returns retained column indices in ascending order.
std::vector<int> prune_features(const Eigen::MatrixXd& features,
                                std::span<const char> is_original,
                                std::span<const CausalRole> roles,
                                std::span<const int> target_codes, int cap,
                                int min_per_group = 1);

}  // namespace cforge
