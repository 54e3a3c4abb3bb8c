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

#include "causalforge/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "causalforge/operators.hpp"

namespace cforge {
namespace {

void row(std::ostream& out, std::initializer_list<std::string> fields) {
  const std::vector<std::string> v(fields);
  write_csv_row(out, v);
}

std::string num(double v) { return format_double(v); }
std::string num(int v) { return std::to_string(v); }

}  // namespace

void write_report(std::ostream& out, const RunReport& report,
                  std::span<const std::string> feature_names) {
  out << "[episodes]\n";
  row(out, {"episode", "episode_best", "running_best", "w_causal", "w_mi", "w_random", "steps",
            "feature_count"});
  for (const EpisodeRecord& e : report.episodes) {
    row(out, {num(e.episode), num(e.episode_best), num(e.running_best), num(e.weights.causal),
              num(e.weights.mi), num(e.weights.random), num(e.steps), num(e.feature_count)});
  }

  out << "\n[steps]\n";
  row(out, {"episode", "step", "group", "operator", "secondary_group", "strategy", "generated",
            "feature_count", "score", "r_perf", "psi", "entropy", "complexity", "total"});
  for (const StepRecord& s : report.steps) {
    const std::string partner =
        s.secondary_group < 0 ? std::string()
                              : std::string(to_string(static_cast<CausalRole>(s.secondary_group)));
    row(out, {num(s.episode), num(s.step), std::string(to_string(static_cast<CausalRole>(s.group))),
              std::string(op_name(op_from_index(s.op))), partner,
              std::string(to_string(s.strategy)), num(s.generated), num(s.feature_count),
              num(s.score), num(s.reward.r_perf), num(s.reward.psi), num(s.reward.entropy),
              num(s.reward.complexity), num(s.reward.total)});
  }

  out << "\n[roles]\n";
  row(out, {"feature", "role", "screened", "mi"});
  const CausalGroups& g = report.groups;
  for (std::size_t j = 0; j < g.role_of.size(); ++j) {
    const auto& members = g.screened[static_cast<std::size_t>(g.role_of[j])];
    const bool screened = std::find(members.begin(), members.end(), static_cast<int>(j)) != members.end();
    const std::string name = j < feature_names.size() ? feature_names[j] : "x" + std::to_string(j);
    row(out, {name, std::string(to_string(g.role_of[j])), screened ? "1" : "0",
              num(g.mi_scores[j])});
  }

  out << "\n[summary]\n";
  row(out, {"key", "value"});
  row(out, {"task", std::string(to_string(report.task))});
  row(out, {"rows", num(report.rows)});
  row(out, {"original_features", num(report.original_count)});
  row(out, {"seed", std::to_string(report.seed)});
  row(out, {"grouping", report.grouping_source});
  row(out, {"phase1_fallback", report.phase1_fallback ? "1" : "0"});
  row(out, {"phase1_message", report.phase1_message});
  row(out, {"lambda", num(report.lambda)});
  row(out, {"mean_confidence", num(report.mean_confidence)});
  row(out, {"group_cap", num(g.k_g)});
  row(out, {"baseline_score", num(report.baseline_score)});
  row(out, {"best_score", num(report.best_score)});
  row(out, {"baseline_cv", num(report.baseline_cv)});
  row(out, {"final_cv", num(report.final_cv)});
  row(out, {"generated_features", num(report.best_generated)});
  row(out, {"episodes", num(static_cast<int>(report.episodes.size()))});
  row(out, {"episodes_to_95", num(report.episodes_to_95)});
  row(out, {"termination", std::string(to_string(report.termination))});
}

void write_run_outputs(const std::filesystem::path& dir, const Dataset& ds,
                       const RunResult& result) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.csv", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "report.csv").string());
    write_report(out, result.report, ds.feature_names);
  }
  write_recipe_file((dir / "recipes.txt").string(), result.recipes);
  Dataset best = ds;
  best.X = result.features;
  best.feature_names = result.feature_names;
  write_csv(best, dir / "best_features.csv");
}

}  // namespace cforge
