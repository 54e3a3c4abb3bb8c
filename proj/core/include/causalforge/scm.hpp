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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"

namespace cforge {

enum class Nonlinearity { kNone, kQuadratic, kExponential, kMixed };

std::string_view to_string(Nonlinearity kind);
Nonlinearity parse_nonlinearity(std::string_view text);

/// Number of leading target parents consumed by each nonlinear form.
int required_parents(Nonlinearity kind);

struct ScmSpec {
  int d = 20;  // feature count; the target is an extra node
  double expected_degree = 2.0;
  double weight_lo = 0.5;
  double weight_hi = 2.0;
  double noise_std = 1.0;
  int n = 1000;
  int target_parent_count = 3;
  Nonlinearity nonlinearity = Nonlinearity::kNone;

  void validate() const;
};

struct ScmSample {
  Dataset data;
  // (d+1) x (d+1); node d is the target. Nonlinear target edges carry 1.0.
  Eigen::MatrixXd adjacency;
  Eigen::MatrixXd feature_noise;  // n x d
  Eigen::VectorXd target_noise;
  std::vector<int> target_parents;  // in the order the target formula uses them
  Eigen::VectorXd target_weights;   // one per parent; used by linear terms
  std::vector<int> topological_order;
};

/// Erdos-Renyi DAG over a random order with edge probability
/// expected_degree / (d - 1), linear-Gaussian ancestral sampling, and a target
/// built from uniformly chosen parents.
ScmSample generate_scm(const ScmSpec& spec, std::uint64_t seed);

/// Evaluates the noiseless target formula on the given rows.
Eigen::VectorXd scm_target_mean(const ScmSample& sample,
                                const Eigen::MatrixXd& X,
                                Nonlinearity kind);

}  // namespace cforge
