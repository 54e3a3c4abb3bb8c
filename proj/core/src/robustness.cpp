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

#include "causalforge/robustness.hpp"

#include <cmath>
#include <ostream>

#include "causalforge/forest.hpp"
#include "causalforge/metrics.hpp"
#include "causalforge/orchestrator.hpp"
#include "causalforge/split.hpp"

namespace cforge {
namespace {

double score_on(const RandomForest& forest, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                TaskKind task) {
  const Eigen::VectorXd pred = forest.predict(X);
  if (task == TaskKind::kClassification) {
    std::vector<int> p(static_cast<std::size_t>(pred.size())), t(p.size());
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
      p[static_cast<std::size_t>(i)] = static_cast<int>(pred(i));
      t[static_cast<std::size_t>(i)] = static_cast<int>(y(i));
    }
    return macro_f1(p, t);
  }
  return one_minus_rae(std::span<const double>(pred.data(), static_cast<std::size_t>(pred.size())),
                       std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

}  // namespace

RunConfig non_causal_config(RunConfig cfg) {
  cfg.grouping = GroupingMode::kCorrelation;
  cfg.exploration = ExplorationMode::kMiOnly;
  cfg.reward = RewardMode::kNoCausal;
  return cfg;
}

std::vector<DegradationRow> robustness_experiment(const Dataset& ds, const RunConfig& cfg,
                                                  std::span<const double> gammas,
                                                  std::span<const ShiftKind> kinds) {
  std::vector<DegradationRow> rows;
  if (gammas.empty() || kinds.empty()) return rows;
  ds.validate();
  const SplitPlan plan = split_stratified(ds, cfg.val_frac, 0, mix_seed(cfg.seed, 0x7E57));
  const Dataset train = ds.subset(plan.train_idx);
  const Dataset test = ds.subset(plan.val_idx);

  const std::pair<std::string, RunConfig> methods[] = {{"causal", cfg},
                                                        {"non-causal", non_causal_config(cfg)}};
  for (const auto& [name, method_cfg] : methods) {
    const RunResult result = run(train, method_cfg);
    RandomForest forest;
    forest.fit(result.features, train.y, ds.task, ds.class_count, cfg.final_forest,
               mix_seed(cfg.seed, 0xF1));
    const double clean =
        score_on(forest, apply_recipes(test.X, result.recipes), test.y, ds.task);
    for (ShiftKind kind : kinds) {
      for (std::size_t g = 0; g < gammas.size(); ++g) {
        const ShiftSpec spec{kind, gammas[g], mix_seed(cfg.seed, 0x5100 + g)};
        const Eigen::MatrixXd shifted = apply_shift(test.X, spec);
        DegradationRow row;
        row.method = name;
        row.kind = kind;
        row.gamma = gammas[g];
        row.score_unshifted = clean;
        row.score_shifted = score_on(forest, apply_recipes(shifted, result.recipes), test.y, ds.task);
        const double denom = std::abs(clean) > 1e-12 ? clean : 1e-12;
        row.degradation_pct = 100.0 * (row.score_shifted - clean) / denom;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

double mean_degradation_magnitude(std::span<const DegradationRow> rows, const std::string& method) {
  double total = 0.0;
  int count = 0;
  for (const DegradationRow& r : rows) {
    if (r.method != method) continue;
    total += std::abs(r.degradation_pct);
    ++count;
  }
  return count == 0 ? 0.0 : total / count;
}

void write_degradation_table(std::ostream& out, std::span<const DegradationRow> rows) {
  const std::vector<std::string> header = {"method",         "kind",          "gamma",
                                           "score_unshifted", "score_shifted", "degradation_pct"};
  write_csv_row(out, header);
  for (const DegradationRow& r : rows) {
    const std::vector<std::string> fields = {r.method,
                                             std::string(to_string(r.kind)),
                                             format_double(r.gamma),
                                             format_double(r.score_unshifted),
                                             format_double(r.score_shifted),
                                             format_double(r.degradation_pct)};
    write_csv_row(out, fields);
  }
}

}  // namespace cforge
