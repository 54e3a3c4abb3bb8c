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

#include "causalforge/state.hpp"

#include <algorithm>
#include <cmath>

#include "causalforge/common.hpp"
#include "causalforge/metrics.hpp"

namespace cforge {
namespace {

double unit(double v) { return std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0); }

double compress(double v) { return std::log1p(std::max(v, 0.0)); }

std::span<const double> column(const Eigen::MatrixXd& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

}  // namespace

std::array<double, 8> summarize_dataset(const Dataset& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (n < 1 || d < 1) throw ContractViolation("summarize_dataset: empty dataset");
  std::array<double, 8> s{};
  s[0] = std::log(static_cast<double>(n));
  s[1] = std::log(static_cast<double>(d));
  const bool classify = data.task == TaskKind::kClassification;
  s[2] = classify ? 1.0 : 0.0;
  s[3] = data.missing_rate;
  s[4] = 1.0;
  if (classify) {
    std::vector<double> counts(static_cast<std::size_t>(data.class_count), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) counts[static_cast<std::size_t>(data.y(i))] += 1.0;
    const double hi = *std::max_element(counts.begin(), counts.end());
    const double lo = *std::min_element(counts.begin(), counts.end());
    s[4] = hi > 0.0 ? lo / hi : 0.0;
  }
  double pair_sum = 0.0;
  double pair_count = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      pair_sum += std::abs(pearson(column(data.X, i), column(data.X, j)));
      pair_count += 1.0;
    }
  }
  s[5] = pair_count > 0.0 ? pair_sum / pair_count : 0.0;
  const std::span<const double> y(data.y.data(), static_cast<std::size_t>(n));
  std::vector<double> r2;
  double target_sum = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double r = pearson(column(data.X, j), y);
    target_sum += std::abs(r);
    r2.push_back(r * r);
  }
  s[6] = target_sum / static_cast<double>(d);
  std::sort(r2.begin(), r2.end());
  const std::size_t mid = r2.size() / 2;
  const double median = r2.size() % 2 == 1 ? r2[mid] : 0.5 * (r2[mid - 1] + r2[mid]);
  s[7] = 1.0 - median;
  return s;
}

Eigen::VectorXf build_state_primary(const StateContext& ctx) {
  std::array<double, kPrimaryStateSize> v{};
  std::size_t k = 0;
  for (double x : ctx.data_summary) v[k++] = x;

  v[k++] = unit(ctx.train_score);
  v[k++] = unit(ctx.val_score);
  const auto& h = ctx.step_scores;
  for (std::size_t lag = 0; lag < 3; ++lag) {
    // Delta_1 is the latest improvement, Delta_3 the oldest.
    double delta = 0.0;
    if (h.size() >= lag + 2) delta = h[h.size() - 1 - lag] - h[h.size() - 2 - lag];
    v[k++] = delta;
  }
  v[k++] = ctx.max_steps > 0 ? unit(static_cast<double>(ctx.step) / ctx.max_steps) : 0.0;

  v[k++] = compress(ctx.original_count);
  v[k++] = compress(ctx.generated_count);
  v[k++] = compress(ctx.selected_count);
  v[k++] = ctx.generated_count > 0
               ? unit(static_cast<double>(ctx.selected_count) / ctx.generated_count)
               : 0.0;
  v[k++] = unit(ctx.mean_importance);
  double var_mean = 0.0;
  double var_std = 0.0;
  if (!ctx.column_variances.empty()) {
    const auto m = static_cast<double>(ctx.column_variances.size());
    for (double x : ctx.column_variances) var_mean += compress(x);
    var_mean /= m;
    for (double x : ctx.column_variances) var_std += std::pow(compress(x) - var_mean, 2);
    var_std = std::sqrt(var_std / m);
  }
  v[k++] = var_mean;
  v[k++] = var_std;

  v[k++] = ctx.max_episodes > 0 ? unit(static_cast<double>(ctx.episode) / ctx.max_episodes) : 0.0;
  if (h.size() >= 2) {
    const std::size_t w = std::min<std::size_t>(h.size(), 5);
    double mean = 0.0;
    for (std::size_t i = h.size() - w; i < h.size(); ++i) mean += h[i];
    mean /= static_cast<double>(w);
    double var = 0.0;
    for (std::size_t i = h.size() - w; i < h.size(); ++i) var += (h[i] - mean) * (h[i] - mean);
    v[k++] = var / static_cast<double>(w);
  } else {
    v[k++] = unit(ctx.best_score);
  }
  v[k++] = ctx.binary_classification ? 1.0 : 0.0;

  if (k != v.size()) throw ContractViolation("build_state_primary: layout size mismatch");
  Eigen::VectorXf out(kPrimaryStateSize);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = static_cast<float>(std::isfinite(v[i]) ? v[i] : 0.0);
  }
  return out;
}

Eigen::VectorXf build_state_operator(const Eigen::VectorXf& primary, int group) {
  if (primary.size() != kPrimaryStateSize) throw ContractViolation("build_state_operator: expected 24 entries");
  if (group < 0 || group >= kGroupCount) throw ContractViolation("build_state_operator: group out of range");
  Eigen::VectorXf out = Eigen::VectorXf::Zero(kOperatorStateSize);
  out.head(kPrimaryStateSize) = primary;
  out(kPrimaryStateSize + group) = 1.0f;
  return out;
}

Eigen::VectorXf build_state_secondary(const Eigen::VectorXf& op_state, OpId op) {
  if (op_state.size() != kOperatorStateSize) throw ContractViolation("build_state_secondary: expected 27 entries");
  const int index = op_index(op);
  if (index < 0 || index >= kOperatorCount) throw ContractViolation("build_state_secondary: operator out of range");
  Eigen::VectorXf out = Eigen::VectorXf::Zero(kSecondaryStateSize);
  out.head(kOperatorStateSize) = op_state;
  out(kOperatorStateSize + index) = 1.0f;
  out(kSecondaryStateSize - 1) = is_binary(op) ? 1.0f : 0.0f;
  return out;
}

}  // namespace cforge
