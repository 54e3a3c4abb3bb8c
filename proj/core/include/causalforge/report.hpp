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

#include <filesystem>
#include <iosfwd>

#include "causalforge/orchestrator.hpp"

namespace cforge {

/// Sections `[episodes]`, `[steps]`, `[roles]` and `[summary]`, each a CSV
/// table with its own header row.
void write_report(std::ostream& out, const RunReport& report,
                  std::span<const std::string> feature_names);

/// report.csv, recipes.txt and best_features.csv (best feature set plus the
/// target) inside `dir`, created if missing.
void write_run_outputs(const std::filesystem::path& dir, const Dataset& ds,
                       const RunResult& result);

}  // namespace cforge
