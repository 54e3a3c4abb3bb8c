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

#include "causalforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "causalforge/common.hpp"

namespace cforge {

double macro_f1(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw ContractViolation("macro_f1: prediction and truth lengths differ");
  }
  if (truth.empty()) return 0.0;
  int classes = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (pred[i] < 0 || truth[i] < 0) {
      throw ContractViolation("macro_f1: negative label");
    }
    classes = std::max({classes, pred[i] + 1, truth[i] + 1});
  }
  std::vector<double> tp(static_cast<std::size_t>(classes), 0.0);
  std::vector<double> fp(tp), fn(tp), support(tp);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(truth[i]);
    const auto p = static_cast<std::size_t>(pred[i]);
    support[t] += 1.0;
    if (t == p) {
      tp[t] += 1.0;
    } else {
      fp[p] += 1.0;
      fn[t] += 1.0;
    }
  }
  double total = 0.0;
  int counted = 0;
  for (std::size_t c = 0; c < tp.size(); ++c) {
    if (support[c] == 0.0) continue;
    total += 2.0 * tp[c] / (2.0 * tp[c] + fp[c] + fn[c]);
    ++counted;
  }
  return total / counted;
}

double one_minus_rae(std::span<const double> pred,
                     std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw ContractViolation("one_minus_rae: prediction and truth lengths differ");
  }
  if (truth.empty()) throw ContractViolation("one_minus_rae: empty input");
  double mean = 0.0;
  for (double t : truth) mean += t;
  mean /= static_cast<double>(truth.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    num += std::abs(truth[i] - pred[i]);
    den += std::abs(truth[i] - mean);
  }
  if (den == 0.0) throw Error("one_minus_rae: truth is constant");
  return 1.0 - num / den;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractViolation("pearson: length mismatch");
  const auto n = static_cast<double>(a.size());
  if (a.empty()) return 0.0;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  const double r = sab / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace cforge
