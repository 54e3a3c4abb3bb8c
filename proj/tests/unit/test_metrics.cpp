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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/metrics.hpp"

namespace cforge {
namespace {

TEST(MacroF1, HandComputed) {
  // class 0: tp 2, fp 1, fn 0 -> 0.8; class 1: tp 1, fp 0, fn 1 -> 2/3
  const std::vector<int> truth = {0, 0, 1, 1};
  const std::vector<int> pred = {0, 0, 0, 1};
  EXPECT_NEAR(macro_f1(pred, truth), (0.8 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(macro_f1(truth, truth), 1.0);
}

TEST(OneMinusRae, HandComputed) {
  const std::vector<double> truth = {1.0, 2.0, 3.0, 6.0};  // mean 3, sum|t - mean| = 6
  const std::vector<double> pred = {1.5, 2.0, 2.0, 6.0};   // sum|t - p| = 1.5
  EXPECT_DOUBLE_EQ(one_minus_rae(pred, truth), 1.0 - 1.5 / 6.0);
  const std::vector<double> mean_pred(4, 3.0);
  EXPECT_DOUBLE_EQ(one_minus_rae(mean_pred, truth), 0.0);
  const std::vector<double> constant(4, 2.0);
  EXPECT_THROW(one_minus_rae(pred, constant), Error);
}

TEST(Pearson, AffineInvariance) {
  Rng rng = make_rng(1);
  std::vector<double> a(200), b(200), c(200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = normal01(rng);
    b[i] = a[i] + normal01(rng);
    c[i] = -3.0 * b[i] + 7.0;
  }
  EXPECT_NEAR(pearson(a, c), -pearson(a, b), 1e-12);
  EXPECT_NEAR(pearson(a, a), 1.0, 1e-15);
  const std::vector<double> flat(200, 1.0);
  EXPECT_EQ(pearson(a, flat), 0.0);
}

}  // namespace
}  // namespace cforge
