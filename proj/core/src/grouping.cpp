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

#include "causalforge/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "causalforge/common.hpp"
#include "causalforge/metrics.hpp"

namespace cforge {
namespace {

std::vector<CausalRole> tertiles(const std::vector<std::size_t>& ranked) {
  const std::size_t d = ranked.size();
  std::vector<CausalRole> roles(d, CausalRole::kOther);
  for (std::size_t r = 0; r < d; ++r) {
    roles[ranked[r]] = static_cast<CausalRole>(3 * r / d);
  }
  return roles;
}

}  // namespace

std::vector<CausalRole> correlation_roles(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size()) throw ContractViolation("correlation_roles: row mismatch");
  const auto d = static_cast<std::size_t>(X.cols());
  const std::span<const double> ys(y.data(), static_cast<std::size_t>(y.size()));
  std::vector<double> strength(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::span<const double> col(X.col(static_cast<Eigen::Index>(j)).data(),
                                      static_cast<std::size_t>(X.rows()));
    strength[j] = std::abs(pearson(col, ys));
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return strength[a] > strength[b]; });
  return tertiles(order);
}

std::vector<CausalRole> random_roles(int d, std::uint64_t seed) {
  if (d < 0) throw ContractViolation("random_roles: negative size");
  std::vector<std::size_t> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_rng(seed, 0x67726f7570ULL);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  }
  return tertiles(order);
}

CausalGroups correlation_grouping(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  TaskKind task, int k_g) {
  return screen_groups(correlation_roles(X, y), X, y, task, k_g);
}

CausalGroups random_grouping(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, TaskKind task,
                             int k_g, std::uint64_t seed) {
  return screen_groups(random_roles(static_cast<int>(X.cols()), seed), X, y, task, k_g);
}

}  // namespace cforge
