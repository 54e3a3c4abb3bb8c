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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/dataset.hpp"

namespace cforge {

using IndexList = std::vector<Eigen::Index>;

struct SplitPlan {
  IndexList train_idx;
  IndexList val_idx;
  IndexList test_idx;
  std::vector<std::pair<IndexList, IndexList>> folds;  // (train, test)
  std::uint64_t seed = 0;
};

/// Seeded hold-out split with val_frac of each class in validation, plus
/// `folds` stratified k-fold pairs over all rows when folds > 0. Regression
/// targets are split without stratification.
SplitPlan split_stratified(const Dataset& ds, double val_frac, int folds,
                           std::uint64_t seed);

}  // namespace cforge
