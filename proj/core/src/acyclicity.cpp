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

#include "causalforge/acyclicity.hpp"

#include <cmath>

#include "causalforge/common.hpp"

namespace cforge {
namespace {

constexpr int kTaylorDegree = 10;
constexpr double kScaledNorm = 0.125;  // Taylor remainder below 1e-17 relative

}  // namespace

namespace {

// expm(a) - I. Degree-10 Taylor series of the scaled matrix evaluated in
// Paterson-Stockmeyer form, then squared back via (I+F)^2 - I = 2F + F^2.
// Keeping the identity out avoids cancellation in trace(expm) - d.
Eigen::MatrixXd expm_minus_identity(const Eigen::MatrixXd& a) {
  const Eigen::Index d = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > kScaledNorm) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
  }
  static_assert(kTaylorDegree == 10);
  double inv_fact[kTaylorDegree + 1];
  inv_fact[0] = 1.0;
  for (int k = 1; k <= kTaylorDegree; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  const Eigen::MatrixXd a1 = a / std::ldexp(1.0, squarings);
  Eigen::MatrixXd a2(d, d), a3(d, d);
  a2.noalias() = a1 * a1;
  a3.noalias() = a2 * a1;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
  auto block = [&](int k) -> Eigen::MatrixXd {
    Eigen::MatrixXd b = inv_fact[k] * identity + inv_fact[k + 1] * a1;
    if (k + 2 <= kTaylorDegree) b += inv_fact[k + 2] * a2;
    return b;
  };
  Eigen::MatrixXd acc = block(9);
  Eigen::MatrixXd tmp(d, d);
  for (int k : {6, 3}) {
    tmp.noalias() = a3 * acc;
    acc = block(k) + tmp;
  }
  Eigen::MatrixXd f = inv_fact[1] * a1 + inv_fact[2] * a2;
  f.noalias() += a3 * acc;
  for (int s = 0; s < squarings; ++s) {
    tmp.noalias() = f * f;
    f = 2.0 * f + tmp;
  }
  return f;
}

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ContractViolation("matrix_exponential: not square");
  if (a.rows() == 0) return a;
  Eigen::MatrixXd e = expm_minus_identity(a);
  e.diagonal().array() += 1.0;
  return e;
}

Acyclicity acyclicity_h(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw ContractViolation("acyclicity_h: not square");
  if (!w.allFinite()) throw ContractViolation("acyclicity_h: non-finite input");
  Acyclicity out;
  if (w.rows() == 0) return out;
  Eigen::MatrixXd e = expm_minus_identity(w.cwiseProduct(w));
  out.value = e.trace();
  e.diagonal().array() += 1.0;
  out.gradient = e.transpose().cwiseProduct(2.0 * w);
  return out;
}

}  // namespace cforge
