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

#include "causalforge/split.hpp"

#include <algorithm>
#include <cmath>

#include "causalforge/common.hpp"

namespace cforge {
namespace {

void shuffle(IndexList& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

// Row indices grouped by class label (one group for regression).
std::vector<IndexList> strata(const Dataset& ds) {
  if (ds.task == TaskKind::kRegression) {
    IndexList all(static_cast<std::size_t>(ds.rows()));
    for (Eigen::Index i = 0; i < ds.rows(); ++i) all[static_cast<std::size_t>(i)] = i;
    return {all};
  }
  std::vector<IndexList> groups(static_cast<std::size_t>(ds.class_count));
  for (Eigen::Index i = 0; i < ds.rows(); ++i) {
    const auto label = static_cast<std::ptrdiff_t>(ds.y(i));
    if (label < 0 || label >= ds.class_count) {
      throw ContractViolation("label out of range at row " + std::to_string(i));
    }
    groups[static_cast<std::size_t>(label)].push_back(i);
  }
  return groups;
}

}  // namespace

SplitPlan split_stratified(const Dataset& ds, double val_frac, int folds,
                           std::uint64_t seed) {
  if (!(val_frac > 0.0 && val_frac < 1.0)) {
    throw ContractViolation("val_frac must lie in (0, 1)");
  }
  if (folds < 0) throw ContractViolation("folds must be non-negative");
  SplitPlan plan;
  plan.seed = seed;

  std::vector<IndexList> groups = strata(ds);
  if (folds > 0) {
    for (std::size_t c = 0; c < groups.size(); ++c) {
      if (!groups[c].empty() &&
          static_cast<int>(groups[c].size()) < folds) {
        throw Error("class " + std::to_string(c) + " has " +
                    std::to_string(groups[c].size()) +
                    " members, fewer than " + std::to_string(folds) + " folds");
      }
    }
  }

  Rng holdout_rng = make_rng(seed, 1);
  for (IndexList group : groups) {
    shuffle(group, holdout_rng);
    const auto k = static_cast<std::size_t>(
        std::llround(static_cast<double>(group.size()) * val_frac));
    plan.val_idx.insert(plan.val_idx.end(), group.begin(),
                        group.begin() + static_cast<std::ptrdiff_t>(k));
    plan.train_idx.insert(plan.train_idx.end(),
                          group.begin() + static_cast<std::ptrdiff_t>(k),
                          group.end());
  }
  std::sort(plan.train_idx.begin(), plan.train_idx.end());
  std::sort(plan.val_idx.begin(), plan.val_idx.end());

  if (folds > 0) {
    Rng fold_rng = make_rng(seed, 2);
    std::vector<IndexList> fold_tests(static_cast<std::size_t>(folds));
    std::size_t position = 0;
    for (IndexList group : groups) {
      shuffle(group, fold_rng);
      for (Eigen::Index idx : group) {
        fold_tests[position % static_cast<std::size_t>(folds)].push_back(idx);
        ++position;
      }
    }
    std::vector<int> owner(static_cast<std::size_t>(ds.rows()), -1);
    for (int f = 0; f < folds; ++f) {
      for (Eigen::Index idx : fold_tests[static_cast<std::size_t>(f)]) {
        owner[static_cast<std::size_t>(idx)] = f;
      }
    }
    for (int f = 0; f < folds; ++f) {
      IndexList test = fold_tests[static_cast<std::size_t>(f)];
      std::sort(test.begin(), test.end());
      IndexList train;
      for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        if (owner[static_cast<std::size_t>(i)] != f) train.push_back(i);
      }
      plan.folds.emplace_back(std::move(train), std::move(test));
    }
  }
  return plan;
}

}  // namespace cforge
