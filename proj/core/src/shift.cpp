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

#include "causalforge/shift.hpp"

#include <cmath>
#include <string>

#include "causalforge/common.hpp"

namespace cforge {

std::string_view to_string(ShiftKind kind) {
  return kind == ShiftKind::kAdditive ? "additive" : "multiplicative";
}

ShiftKind parse_shift_kind(std::string_view text) {
  if (text == "multiplicative") return ShiftKind::kMultiplicative;
  if (text == "additive") return ShiftKind::kAdditive;
  throw ParseError("unknown shift kind '" + std::string(text) + "'", 0, 0);
}

Eigen::MatrixXd apply_shift(const Eigen::MatrixXd& X, const ShiftSpec& spec) {
  if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma)) {
    throw ContractViolation("apply_shift: gamma must be finite and non-negative");
  }
  if (!X.allFinite()) throw ContractViolation("apply_shift: non-finite input");
  Rng rng = make_rng(spec.seed, 0x7368696674ULL);
  Eigen::MatrixXd out = X;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double scale = spec.gamma;
    if (spec.kind == ShiftKind::kAdditive) {
      const double mean = X.col(j).mean();
      const double var =
          X.rows() > 0 ? (X.col(j).array() - mean).square().sum() / static_cast<double>(X.rows()) : 0.0;
      scale *= std::sqrt(var);
    }
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double e = normal01(rng);
      if (spec.kind == ShiftKind::kMultiplicative) {
        out(i, j) = X(i, j) * (1.0 + scale * e);
      } else {
        out(i, j) = X(i, j) + scale * e;
      }
    }
  }
  return out;
}

}  // namespace cforge
