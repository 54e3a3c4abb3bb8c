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

#include "causalforge/digraph.hpp"
#include "causalforge/notears.hpp"

namespace cforge {

struct EdgeProbabilities {
  Eigen::MatrixXd p;        // fraction of bootstrap DAGs containing i -> j
  int bootstrap_count = 0;  // runs that converged and were counted
  int requested = 0;

  /// Mean probability over edges seen in at least one run; 0 if none.
  double mean_confidence() const;
};

/// Row-bootstrap NOTEARS ensemble. Non-converged runs are skipped; throws if
/// every run was skipped.
EdgeProbabilities bootstrap_ensemble(const Eigen::MatrixXd& X, int B,
                                     double lambda, std::uint64_t seed,
                                     const NotearsOptions& opts = {},
                                     double tau = 0.1);

/// Soft roles from edge probabilities. For each feature f: direct score
/// p(f, target); indirect score is the best product of probabilities over
/// paths f -> k ~> target of length >= 2 that avoid f; other score is
/// 1 - max(direct, indirect). The highest score wins, ties going to the
/// higher-priority role.
std::vector<CausalRole> soft_roles(const EdgeProbabilities& probs,
                                   std::size_t target);

}  // namespace cforge
