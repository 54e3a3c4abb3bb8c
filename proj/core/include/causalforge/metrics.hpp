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

namespace cforge {

/// Unweighted mean of per-class F1 over the classes present in `truth`.
double macro_f1(std::span<const int> pred, std::span<const int> truth);

/// 1 - sum|truth - pred| / sum|truth - mean(truth)|. Throws on constant truth.
double one_minus_rae(std::span<const double> pred,
                     std::span<const double> truth);

double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace cforge
