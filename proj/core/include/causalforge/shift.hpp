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

#include <Eigen/Dense>

namespace cforge {

enum class ShiftKind { kMultiplicative, kAdditive };

std::string_view to_string(ShiftKind kind);
ShiftKind parse_shift_kind(std::string_view text);

struct ShiftSpec {
  ShiftKind kind = ShiftKind::kMultiplicative;
  double gamma = 0.3;
  std::uint64_t seed = 0;
};

/// Covariate shift with one standard normal draw per entry, in column-major
/// order:
///   multiplicative  x * (1 + gamma * e)
///   additive        x + gamma * sd_j * e   (population sd of column j)
Eigen::MatrixXd apply_shift(const Eigen::MatrixXd& X, const ShiftSpec& spec);

}  // namespace cforge
