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
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"
#include "causalforge/digraph.hpp"
#include "causalforge/screening.hpp"

namespace cforge {

/// Features ranked by |Pearson(x, y)| (ties to the lower index); rank r of d
/// lands in tertile floor(3 r / d): direct, indirect, other.
std::vector<CausalRole> correlation_roles(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// A seeded shuffle split into tertiles the same way.
std::vector<CausalRole> random_roles(int d, std::uint64_t seed);

CausalGroups correlation_grouping(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  TaskKind task, int k_g);
CausalGroups random_grouping(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, TaskKind task,
                             int k_g, std::uint64_t seed);

}  // namespace cforge
