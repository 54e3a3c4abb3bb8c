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
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/screening.hpp"

namespace cforge {
namespace {

// MI as H(a) + H(b) - H(a, b).
double mi_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  auto entropy = [](const std::map<long long, int>& counts, double n) {
    double h = 0.0;
    for (const auto& kv : counts) h -= kv.second / n * std::log(kv.second / n);
    return h;
  };
  std::map<long long, int> ca, cb, cab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++cab[static_cast<long long>(a[i]) * 100000 + b[i]];
  }
  const auto n = static_cast<double>(a.size());
  return entropy(ca, n) + entropy(cb, n) - entropy(cab, n);
}

TEST(Bins, EqualFrequencyAndTies) {
  std::vector<double> x(100);
  for (int i = 0; i < 100; ++i) x[static_cast<std::size_t>(i)] = 99 - i;
  const auto codes = equal_frequency_bins(x);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(codes[static_cast<std::size_t>(i)], (99 - i) / 10);
  const std::vector<double> ties = {1, 1, 1, 1, 1, 2, 2, 2, 2, 2};
  const auto tied = equal_frequency_bins(ties, 4);
  EXPECT_EQ(tied, (std::vector<int>{0, 0, 0, 0, 0, 2, 2, 2, 2, 2}));
  EXPECT_EQ(count_distinct(tied), 2);
}

TEST(MutualInformation, MatchesEntropyIdentity) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> a(300), b(300);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = static_cast<int>(uniform_index(rng, 5));
      b[i] = uniform01(rng) < 0.5 ? a[i] : static_cast<int>(uniform_index(rng, 4));
    }
    EXPECT_NEAR(mutual_information(a, b), mi_oracle(a, b), 1e-12);
  }
  const std::vector<int> same = {0, 1, 0, 1};
  EXPECT_NEAR(mutual_information(same, same), std::log(2.0), 1e-15);
}

TEST(GroupCap, Rule) {
  EXPECT_EQ(default_group_cap(100), 10);
  EXPECT_EQ(default_group_cap(20), 4);
  EXPECT_EQ(default_group_cap(1000), 15);
  EXPECT_EQ(default_group_cap(1), 1);
}

TEST(Screening, TopKMatchesExhaustiveSearch) {
  const int n = 400, d = 20, k = 5;
  Rng rng = make_rng(4);
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = normal01(rng);
    for (Eigen::Index j = 0; j < d; ++j) X(i, j) = y(i) * 0.1 * static_cast<double>(j % 7) + normal01(rng);
  }
  const std::vector<CausalRole> roles(d, CausalRole::kDirect);
  const CausalGroups g = screen_groups(roles, X, y, TaskKind::kRegression, k);
  // Oracle: exhaustive best subset by summed MI on the same binning.
  const auto ty = equal_frequency_bins(std::span<const double>(y.data(), n));
  std::vector<double> mi(d);
  for (int j = 0; j < d; ++j) {
    mi[static_cast<std::size_t>(j)] = mi_oracle(equal_frequency_bins(std::span<const double>(X.col(j).data(), n)), ty);
  }
  double best = -1.0;
  std::vector<int> best_set;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double total = 0.0;
    std::vector<int> set;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) {
        total += mi[static_cast<std::size_t>(j)];
        set.push_back(j);
      }
    }
    if (total > best + 1e-12) {
      best = total;
      best_set = set;
    }
  }
  EXPECT_EQ(g.group(CausalRole::kDirect), best_set);
  EXPECT_TRUE(g.group(CausalRole::kIndirect).empty());
  EXPECT_FALSE(g.used_fallback[0]);
}

TEST(Screening, SmallGroupsPassThroughAndDegenerateFallback) {
  const int n = 100;
  Rng rng = make_rng(5);
  Eigen::MatrixXd X(n, 5);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = normal01(rng);
    X(i, 0) = 0.0;  // constant column: one occupied bin
    X(i, 1) = y(i) + 0.1 * normal01(rng);
    X(i, 2) = normal01(rng);
    X(i, 3) = y(i) + 2.0 * normal01(rng);
    X(i, 4) = normal01(rng);
  }
  const std::vector<CausalRole> roles = {CausalRole::kOther, CausalRole::kOther, CausalRole::kOther,
                                         CausalRole::kOther, CausalRole::kDirect};
  const CausalGroups g = screen_groups(roles, X, y, TaskKind::kRegression, 2);
  EXPECT_EQ(g.group(CausalRole::kDirect), (std::vector<int>{4}));
  EXPECT_TRUE(g.used_fallback[2]);
  EXPECT_EQ(g.group(CausalRole::kOther), (std::vector<int>{1, 3}));
  EXPECT_THROW(screen_groups(roles, X, y, TaskKind::kRegression, 0), ContractViolation);
}

}  // namespace
}  // namespace cforge
