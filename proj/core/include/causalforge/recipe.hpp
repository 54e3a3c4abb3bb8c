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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "causalforge/digraph.hpp"
#include "causalforge/operators.hpp"

namespace cforge {

/// Expression tree describing how a feature is computed from source columns.
struct FeatureRecipe {
  enum class Kind { kSource, kUnary, kBinary };

  Kind kind = Kind::kSource;
  int source = 0;            // column index, kSource only
  OpId op = OpId::kSqrt;     // kUnary / kBinary only
  std::vector<FeatureRecipe> children;

  static FeatureRecipe source_of(int column);
  static FeatureRecipe unary(OpId op, FeatureRecipe child);
  static FeatureRecipe binary(OpId op, FeatureRecipe left, FeatureRecipe right);

  bool operator==(const FeatureRecipe&) const = default;
};

int op_depth(const FeatureRecipe& r);

/// Source columns in first-appearance (left to right) order, duplicates kept once.
std::vector<int> source_columns(const FeatureRecipe& r);

/// Highest-priority role among the source leaves (direct > indirect > other).
CausalRole inherited_role(const FeatureRecipe& r, std::span<const CausalRole> source_roles);

/// Prefix notation, e.g. "div(src:3, log(src:7))".
std::string serialize_recipe(const FeatureRecipe& r);

/// Inverse of serialize_recipe. Whitespace between tokens is ignored.
/// Throws ParseError with a 1-based column on malformed input.
FeatureRecipe parse_recipe(std::string_view text);

/// Evaluates the recipe on the columns of `source`.
Eigen::VectorXd evaluate_recipe(const FeatureRecipe& r, const Eigen::MatrixXd& source);

std::vector<FeatureRecipe> read_recipe_file(const std::string& path);
void write_recipe_file(const std::string& path, std::span<const FeatureRecipe> recipes);

}  // namespace cforge
