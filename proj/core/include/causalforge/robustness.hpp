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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "causalforge/dataset.hpp"
#include "causalforge/run_config.hpp"
#include "causalforge/shift.hpp"

namespace cforge {

struct DegradationRow {
  std::string method;  // "causal" or "non-causal"
  ShiftKind kind = ShiftKind::kMultiplicative;
  double gamma = 0.0;
  double score_unshifted = 0.0;
  double score_shifted = 0.0;
  double degradation_pct = 0.0;  // negative means a drop
};

/// The configuration used as the non-causal comparison: correlation grouping,
/// MI-only exploration, no causal reward term.
RunConfig non_causal_config(RunConfig cfg);

/// Hold-out robustness table. Each method is trained on the training rows,
/// its recipes are re-applied to clean and shifted test rows, and a final
/// forest fitted on the transformed training rows scores both.
std::vector<DegradationRow> robustness_experiment(const Dataset& ds, const RunConfig& cfg,
                                                  std::span<const double> gammas,
                                                  std::span<const ShiftKind> kinds);

/// Mean |degradation_pct| of one method's rows; 0 when it has none.
double mean_degradation_magnitude(std::span<const DegradationRow> rows, const std::string& method);

void write_degradation_table(std::ostream& out, std::span<const DegradationRow> rows);

}  // namespace cforge
