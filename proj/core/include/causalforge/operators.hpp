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

#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace cforge {

enum class OpId : int {
  kSqrt = 0,
  kSquare,
  kCube,
  kSin,
  kCos,
  kTanh,
  kReciprocal,
  kExp,
  kLog,
  kSigmoid,
  kStandardize,
  kAdd,
  kSub,
  kMul,
  kDiv,
};

inline constexpr int kOperatorCount = 15;
inline constexpr int kUnaryOperatorCount = 11;
inline constexpr double kGuardEpsilon = 1e-8;
inline constexpr double kValueBound = 1e6;

constexpr bool is_binary(OpId op) { return static_cast<int>(op) >= kUnaryOperatorCount; }
constexpr int op_index(OpId op) { return static_cast<int>(op); }
OpId op_from_index(int index);

std::string_view op_name(OpId op);
std::optional<OpId> op_from_name(std::string_view name);

/// Non-finite entries become 0, then values are clipped to +-kValueBound.
void guard_in_place(Eigen::VectorXd& v);

/// Guarded unary transform. log: ln(|x|+eps); sqrt: sqrt(|x|); reciprocal:
/// sign(x)/max(|x|, eps) with sign(0) = 0; standardize: population z-score
/// with the deviation floored at eps.
Eigen::VectorXd apply_unary(OpId op, const Eigen::VectorXd& x);

/// Guarded binary transform; div is x * sign(y) / max(|y|, eps).
Eigen::VectorXd apply_binary(OpId op, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace cforge
