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

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/ensemble.hpp"

namespace cforge {
namespace {

TEST(Ensemble, ChainEdgesAreStable) {
  Rng rng = make_rng(1);
  Eigen::MatrixXd X(500, 3);
  for (Eigen::Index i = 0; i < 500; ++i) {
    X(i, 0) = normal01(rng);
    X(i, 1) = 1.5 * X(i, 0) + normal01(rng);
    X(i, 2) = 1.5 * X(i, 1) + normal01(rng);
  }
  const EdgeProbabilities p = bootstrap_ensemble(X, 10, 0.03, 2);
  EXPECT_EQ(p.requested, 10);
  EXPECT_EQ(p.bootstrap_count, 10);
  EXPECT_GE(p.p(0, 1), 0.8);
  EXPECT_GE(p.p(1, 2), 0.8);
  EXPECT_GT(p.mean_confidence(), 0.5);
}

TEST(Ensemble, NoiseHasNoConfidentEdges) {
  Rng rng = make_rng(3);
  Eigen::MatrixXd X(400, 4);
  for (Eigen::Index k = 0; k < X.size(); ++k) X.data()[k] = normal01(rng);
  const EdgeProbabilities p = bootstrap_ensemble(X, 10, 0.1, 4);
  Eigen::MatrixXd off = p.p;
  off.diagonal().setZero();
  EXPECT_LT(off.maxCoeff(), 0.5);
}

TEST(Ensemble, SoftRoles) {
  // Node 3 is the target.
  EdgeProbabilities p;
  p.p = Eigen::MatrixXd::Zero(4, 4);
  p.p(0, 3) = 0.9;              // direct
  p.p(1, 0) = 0.8;              // 1 -> 0 -> 3: indirect score 0.72
  p.p(1, 3) = 0.3;
  p.p(2, 3) = 0.2;              // other score 0.8 beats direct 0.2
  p.bootstrap_count = 10;
  EXPECT_EQ(soft_roles(p, 3),
            (std::vector<CausalRole>{CausalRole::kDirect, CausalRole::kIndirect, CausalRole::kOther}));
  EdgeProbabilities none;
  none.p = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_EQ(none.mean_confidence(), 0.0);
}

}  // namespace
}  // namespace cforge
