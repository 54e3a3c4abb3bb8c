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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cforge {

enum class TaskKind { kClassification, kRegression };

std::string_view to_string(TaskKind task);
TaskKind parse_task_kind(std::string_view text);

/// Tabular data: n rows, d feature columns and one target column.
/// Classification targets hold integer labels in [0, class_count).
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  TaskKind task = TaskKind::kRegression;
  std::vector<std::string> feature_names;
  std::string target_name = "y";
  int class_count = 1;
  // Fraction of feature cells that were missing before imputation.
  double missing_rate = 0.0;

  Eigen::Index rows() const { return X.rows(); }
  Eigen::Index cols() const { return X.cols(); }

  /// Checks the invariants the learning pipeline relies on (n >= 10, d >= 2,
  /// finite values, labels in range). Throws cforge::Error on violation.
  void validate() const;

  Dataset subset(std::span<const Eigen::Index> row_indices) const;
};

/// Reads a CSV with a header row. Numeric columns are parsed as doubles,
/// non-numeric columns are integer-encoded by first appearance, and missing
/// cells are mean-imputed (mode-imputed for categoricals). Rows with a
/// missing target are dropped.
Dataset load_csv(const std::filesystem::path& path,
                 std::string_view target_column, TaskKind task);
Dataset parse_csv(std::istream& in, std::string_view target_column,
                  TaskKind task);

/// Loads every column as a feature (no target). Used for transforming new data.
Dataset load_features_csv(const std::filesystem::path& path);

void write_csv(const Dataset& data, const std::filesystem::path& path);

/// Dense comma-separated matrix without a header.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const Eigen::MatrixXd& m,
                      const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style reader: quoted fields may contain commas and doubled quotes.
CsvTable read_csv_table(std::istream& in);
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace cforge
