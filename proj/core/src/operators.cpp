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

#include "causalforge/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "causalforge/common.hpp"

namespace cforge {
namespace {

constexpr std::array<std::string_view, kOperatorCount> kNames = {
    "sqrt", "square", "cube",     "sin", "cos", "tanh", "reciprocal", "exp",
    "log",  "sigmoid", "standardize", "add", "sub", "mul",  "div"};

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

OpId op_from_index(int index) {
  if (index < 0 || index >= kOperatorCount) {
    throw ContractViolation("operator index out of range: " + std::to_string(index));
  }
  return static_cast<OpId>(index);
}

std::string_view op_name(OpId op) { return kNames[static_cast<std::size_t>(op_index(op))]; }

std::optional<OpId> op_from_name(std::string_view name) {
  for (int i = 0; i < kOperatorCount; ++i) {
    if (kNames[static_cast<std::size_t>(i)] == name) return static_cast<OpId>(i);
  }
  return std::nullopt;
}

void guard_in_place(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double x = v(i);
    if (!std::isfinite(x)) x = 0.0;
    v(i) = std::clamp(x, -kValueBound, kValueBound);
  }
}

Eigen::VectorXd apply_unary(OpId op, const Eigen::VectorXd& x) {
  if (is_binary(op)) throw ContractViolation("apply_unary: binary operator " + std::string(op_name(op)));
  Eigen::VectorXd out(x.size());
  switch (op) {
    case OpId::kSqrt:
      out = x.array().abs().sqrt();
      break;
    case OpId::kSquare:
      out = x.array().square();
      break;
    case OpId::kCube:
      out = x.array().cube();
      break;
    case OpId::kSin:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::sin(x(i));
      break;
    case OpId::kCos:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::cos(x(i));
      break;
    case OpId::kTanh:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::tanh(x(i));
      break;
    case OpId::kReciprocal:
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        out(i) = sign(x(i)) / std::max(std::abs(x(i)), kGuardEpsilon);
      }
      break;
    case OpId::kExp:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::exp(x(i));
      break;
    case OpId::kLog:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::log(std::abs(x(i)) + kGuardEpsilon);
      break;
    case OpId::kSigmoid:
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = 1.0 / (1.0 + std::exp(-x(i)));
      break;
    case OpId::kStandardize: {
      const auto n = static_cast<double>(x.size());
      const double mean = x.size() == 0 ? 0.0 : x.sum() / n;
      const double var = x.size() == 0 ? 0.0 : (x.array() - mean).square().sum() / n;
      const double sd = std::max(std::sqrt(var), kGuardEpsilon);
      out = (x.array() - mean) / sd;
      break;
    }
    default:
      break;
  }
  guard_in_place(out);
  return out;
}

Eigen::VectorXd apply_binary(OpId op, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (!is_binary(op)) throw ContractViolation("apply_binary: unary operator " + std::string(op_name(op)));
  if (x.size() != y.size()) throw ContractViolation("apply_binary: length mismatch");
  Eigen::VectorXd out(x.size());
  switch (op) {
    case OpId::kAdd:
      out = x + y;
      break;
    case OpId::kSub:
      out = x - y;
      break;
    case OpId::kMul:
      out = x.cwiseProduct(y);
      break;
    case OpId::kDiv:
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        out(i) = x(i) * sign(y(i)) / std::max(std::abs(y(i)), kGuardEpsilon);
      }
      break;
    default:
      break;
  }
  guard_in_place(out);
  return out;
}

}  // namespace cforge
