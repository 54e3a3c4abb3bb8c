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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/split.hpp"

namespace cforge {
namespace {

Dataset labelled(int n, int classes) {
  Dataset ds;
  ds.task = TaskKind::kClassification;
  ds.class_count = classes;
  ds.X = Eigen::MatrixXd::Zero(n, 2);
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) ds.y(i) = i % 7 == 0 ? 1 : 0;  // imbalanced
  ds.feature_names = {"a", "b"};
  return ds;
}

TEST(Split, HoldOutIsStratifiedAndDisjoint) {
  const Dataset ds = labelled(700, 2);
  const SplitPlan plan = split_stratified(ds, 0.2, 0, 3);
  std::set<Eigen::Index> train(plan.train_idx.begin(), plan.train_idx.end());
  for (Eigen::Index i : plan.val_idx) EXPECT_EQ(train.count(i), 0u);
  EXPECT_EQ(plan.train_idx.size() + plan.val_idx.size(), 700u);
  const auto minority = std::count_if(plan.val_idx.begin(), plan.val_idx.end(),
                                      [&](Eigen::Index i) { return ds.y(i) == 1; });
  EXPECT_EQ(minority, 20);  // round(100 * 0.2)
  EXPECT_EQ(plan.val_idx.size(), 140u);
}

TEST(Split, FoldsPartitionRows) {
  const Dataset ds = labelled(103, 2);
  const SplitPlan plan = split_stratified(ds, 0.2, 5, 9);
  ASSERT_EQ(plan.folds.size(), 5u);
  std::vector<int> seen(103, 0);
  for (const auto& [train, test] : plan.folds) {
    EXPECT_EQ(train.size() + test.size(), 103u);
    for (Eigen::Index i : test) ++seen[static_cast<std::size_t>(i)];
    const auto minority = std::count_if(test.begin(), test.end(),
                                        [&](Eigen::Index i) { return ds.y(i) == 1; });
    EXPECT_GE(minority, 2);
    EXPECT_LE(minority, 4);
  }
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(Split, Deterministic) {
  const Dataset ds = labelled(50, 2);
  const SplitPlan a = split_stratified(ds, 0.3, 3, 11);
  const SplitPlan b = split_stratified(ds, 0.3, 3, 11);
  EXPECT_EQ(a.val_idx, b.val_idx);
  EXPECT_EQ(a.folds, b.folds);
  const SplitPlan c = split_stratified(ds, 0.3, 3, 12);
  EXPECT_NE(a.val_idx, c.val_idx);
}

TEST(Split, RejectsBadArguments) {
  const Dataset ds = labelled(50, 2);
  EXPECT_THROW(split_stratified(ds, 0.0, 0, 1), ContractViolation);
  EXPECT_THROW(split_stratified(ds, 1.0, 0, 1), ContractViolation);
  EXPECT_THROW(split_stratified(ds, 0.2, 20, 1), Error);  // only 8 minority rows
}

}  // namespace
}  // namespace cforge
