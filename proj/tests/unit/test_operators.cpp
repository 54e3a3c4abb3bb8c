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

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/operators.hpp"

namespace cforge {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

TEST(Operators, NamesRoundTrip) {
  for (int i = 0; i < kOperatorCount; ++i) {
    const OpId op = op_from_index(i);
    EXPECT_EQ(op_from_name(op_name(op)), op);
    EXPECT_EQ(is_binary(op), i >= kUnaryOperatorCount);
  }
  EXPECT_FALSE(op_from_name("pow").has_value());
  EXPECT_THROW(op_from_index(15), ContractViolation);
}

TEST(Operators, UnaryExamples) {
  EXPECT_EQ(apply_unary(OpId::kSquare, vec({1e9}))(0), 1e6);
  EXPECT_EQ(apply_unary(OpId::kLog, vec({1.0}))(0), std::log(1.0 + 1e-8));
  EXPECT_EQ(apply_unary(OpId::kSqrt, vec({-4.0}))(0), 2.0);
  EXPECT_EQ(apply_unary(OpId::kReciprocal, vec({0.0}))(0), 0.0);
  EXPECT_EQ(apply_unary(OpId::kReciprocal, vec({-0.5}))(0), -2.0);
  EXPECT_EQ(apply_unary(OpId::kReciprocal, vec({1e-12}))(0), 1e6);  // 1e8 clipped
  EXPECT_EQ(apply_unary(OpId::kExp, vec({20.0}))(0), 1e6);
  EXPECT_EQ(apply_unary(OpId::kExp, vec({1000.0}))(0), 0.0);  // overflow is non-finite
  EXPECT_EQ(apply_unary(OpId::kCube, vec({-3.0}))(0), -27.0);
  EXPECT_NEAR(apply_unary(OpId::kSigmoid, vec({0.0}))(0), 0.5, 1e-15);
  EXPECT_THROW(apply_unary(OpId::kAdd, vec({1.0})), ContractViolation);
}

TEST(Operators, StandardizeUsesPopulationDeviation) {
  const Eigen::VectorXd z = apply_unary(OpId::kStandardize, vec({1.0, 2.0, 3.0, 4.0}));
  const double sd = std::sqrt(1.25);
  EXPECT_NEAR(z(0), -1.5 / sd, 1e-15);
  EXPECT_NEAR(z(3), 1.5 / sd, 1e-15);
  const Eigen::VectorXd flat = apply_unary(OpId::kStandardize, vec({7.0, 7.0, 7.0}));
  EXPECT_EQ(flat, Eigen::VectorXd::Zero(3));
}

TEST(Operators, BinaryExamples) {
  EXPECT_EQ(apply_binary(OpId::kDiv, vec({1.0}), vec({0.5}))(0), 2.0);
  const Eigen::VectorXd d = apply_binary(OpId::kDiv, vec({3.0, 3.0}), vec({0.0, -3.0}));
  EXPECT_EQ(d(0), 0.0);
  EXPECT_EQ(d(1), -1.0);
  EXPECT_EQ(apply_binary(OpId::kMul, vec({1e5}), vec({1e5}))(0), 1e6);
  EXPECT_EQ(apply_binary(OpId::kSub, vec({1.0}), vec({4.0}))(0), -3.0);
  EXPECT_THROW(apply_binary(OpId::kSin, vec({1.0}), vec({1.0})), ContractViolation);
  EXPECT_THROW(apply_binary(OpId::kAdd, vec({1.0}), vec({1.0, 2.0})), ContractViolation);
}

TEST(Operators, NonFiniteInputsAreZeroed) {
  const double inf = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd x = vec({std::nan(""), inf, -inf});
  for (int i = 0; i < kOperatorCount; ++i) {
    const OpId op = op_from_index(i);
    const Eigen::VectorXd out = is_binary(op) ? apply_binary(op, x, x) : apply_unary(op, x);
    for (Eigen::Index k = 0; k < out.size(); ++k) {
      EXPECT_TRUE(std::isfinite(out(k))) << op_name(op);
      EXPECT_LE(std::abs(out(k)), kValueBound) << op_name(op);
    }
  }
}

TEST(Operators, FuzzStaysBounded) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    Eigen::VectorXd x(16), y(16);
    for (int k = 0; k < 16; ++k) {
      x(k) = normal01(rng) * std::pow(10.0, static_cast<double>(uniform_index(rng, 24)) - 12.0);
      y(k) = uniform01(rng) < 0.1 ? 0.0 : normal01(rng) * std::pow(10.0, static_cast<double>(uniform_index(rng, 24)) - 12.0);
    }
    const OpId op = op_from_index(static_cast<int>(uniform_index(rng, kOperatorCount)));
    const Eigen::VectorXd out = is_binary(op) ? apply_binary(op, x, y) : apply_unary(op, x);
    ASSERT_TRUE(out.allFinite());
    ASSERT_LE(out.cwiseAbs().maxCoeff(), kValueBound);
  }
}

}  // namespace
}  // namespace cforge
