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

#include "causalforge/screening.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "causalforge/common.hpp"
#include "causalforge/metrics.hpp"

namespace cforge {

std::vector<int> equal_frequency_bins(std::span<const double> x, int bins) {
  if (bins < 1) throw ContractViolation("equal_frequency_bins: bins must be positive");
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<int> codes(n, 0);
  int run_bin = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t row = order[r];
    if (r == 0 || x[row] != x[order[r - 1]]) {
      run_bin = static_cast<int>(r * static_cast<std::size_t>(bins) / n);
    }
    codes[row] = run_bin;
  }
  return codes;
}

double mutual_information(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ContractViolation("mutual_information: length mismatch");
  if (a.empty()) return 0.0;
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
  }
  const auto n = static_cast<double>(a.size());
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    mi += count / n * std::log(count * n / (pa[key.first] * pb[key.second]));
  }
  return std::max(mi, 0.0);
}

std::vector<int> target_codes(const Eigen::VectorXd& y, TaskKind task) {
  if (task == TaskKind::kClassification) {
    std::vector<int> codes(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      codes[static_cast<std::size_t>(i)] = static_cast<int>(y(i));
    }
    return codes;
  }
  return equal_frequency_bins(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

double mutual_information(std::span<const double> x, std::span<const int> target) {
  const std::vector<int> codes = equal_frequency_bins(x);
  return mutual_information(codes, target);
}

int count_distinct(std::span<const int> codes) {
  std::vector<int> sorted(codes.begin(), codes.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

int default_group_cap(int d) {
  const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(std::max(d, 0)))));
  return std::max(1, std::min(root, 15));
}

CausalGroups screen_groups(std::span<const CausalRole> roles, const Eigen::MatrixXd& X,
                           const Eigen::VectorXd& y, TaskKind task, int k_g) {
  if (k_g < 1) throw ContractViolation("screen_groups: k_g must be at least 1");
  if (static_cast<Eigen::Index>(roles.size()) != X.cols()) {
    throw ContractViolation("screen_groups: one role per column required");
  }
  if (X.rows() != y.size()) throw ContractViolation("screen_groups: row mismatch");

  CausalGroups out;
  out.role_of.assign(roles.begin(), roles.end());
  out.k_g = k_g;
  const std::vector<int> ty = target_codes(y, task);
  const std::span<const double> y_span(y.data(), static_cast<std::size_t>(y.size()));
  const auto d = static_cast<std::size_t>(X.cols());
  std::vector<char> degenerate(d, 0);
  out.mi_scores.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::span<const double> col(X.col(static_cast<Eigen::Index>(j)).data(),
                                      static_cast<std::size_t>(X.rows()));
    const std::vector<int> codes = equal_frequency_bins(col);
    degenerate[j] = count_distinct(codes) < 2;
    out.mi_scores[j] = mutual_information(codes, ty);
  }

  for (int g = 0; g < kRoleCount; ++g) {
    std::vector<int> members;
    for (std::size_t j = 0; j < d; ++j) {
      if (static_cast<int>(roles[j]) == g) members.push_back(static_cast<int>(j));
    }
    auto& kept = out.screened[static_cast<std::size_t>(g)];
    if (static_cast<int>(members.size()) <= k_g) {
      kept = members;
      continue;
    }
    const bool fallback = std::any_of(members.begin(), members.end(),
                                      [&](int j) { return degenerate[static_cast<std::size_t>(j)]; });
    out.used_fallback[static_cast<std::size_t>(g)] = fallback;
    std::vector<double> score(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto j = static_cast<Eigen::Index>(members[m]);
      if (fallback) {
        const std::span<const double> col(X.col(j).data(), static_cast<std::size_t>(X.rows()));
        score[m] = std::abs(pearson(col, y_span));
      } else {
        score[m] = out.mi_scores[static_cast<std::size_t>(j)];
      }
    }
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    for (int k = 0; k < k_g; ++k) kept.push_back(members[order[static_cast<std::size_t>(k)]]);
    std::sort(kept.begin(), kept.end());
  }
  return out;
}

}  // namespace cforge
