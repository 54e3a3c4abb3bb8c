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

#include "causalforge/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "causalforge/common.hpp"

namespace cforge {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_missing(std::string_view cell) {
  cell = trim(cell);
  return cell.empty() || cell == "NA" || cell == "N/A" || cell == "NaN" ||
         cell == "nan" || cell == "?" || cell == "null" || cell == "NULL";
}

enum class CellParse { kNumber, kNonNumeric, kNonFinite };

CellParse parse_number(std::string_view cell, double& out) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return CellParse::kNonNumeric;
  if (!std::isfinite(out)) return CellParse::kNonFinite;
  return CellParse::kNumber;
}

struct EncodedColumn {
  std::vector<double> values;
  std::size_t missing = 0;
};

EncodedColumn encode_feature(const CsvTable& table, std::size_t col,
                             std::span<const std::size_t> rows) {
  std::size_t numeric = 0;
  std::size_t present = 0;
  for (std::size_t r : rows) {
    const std::string& cell = table.rows[r][col];
    if (is_missing(cell)) continue;
    ++present;
    double v;
    if (parse_number(cell, v) == CellParse::kNumber) ++numeric;
  }
  EncodedColumn out;
  out.values.resize(rows.size());
  std::vector<bool> missing(rows.size(), false);
  const bool numeric_column = present > 0 && 2 * numeric >= present;
  if (numeric_column || present == 0) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string& cell = table.rows[rows[i]][col];
      if (is_missing(cell)) {
        missing[i] = true;
        continue;
      }
      double v = 0.0;
      const CellParse status = parse_number(cell, v);
      if (status != CellParse::kNumber) {
        throw ParseError("column '" + table.header[col] + "' row " +
                             std::to_string(rows[i] + 2) +
                             ": cannot parse '" + cell + "' as a " +
                             (status == CellParse::kNonFinite ? "finite number"
                                                              : "number"),
                         rows[i] + 2, col + 1);
      }
      out.values[i] = v;
      sum += v;
      ++count;
    }
    const double mean = count > 0 ? sum / static_cast<double>(count) : 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (missing[i]) {
        out.values[i] = mean;
        ++out.missing;
      }
    }
    return out;
  }

  std::unordered_map<std::string, int> codes;
  std::vector<std::size_t> frequency;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& cell = table.rows[rows[i]][col];
    if (is_missing(cell)) {
      missing[i] = true;
      continue;
    }
    const std::string key(trim(cell));
    auto [it, inserted] = codes.emplace(key, static_cast<int>(codes.size()));
    if (inserted) frequency.push_back(0);
    ++frequency[static_cast<std::size_t>(it->second)];
    out.values[i] = it->second;
  }
  // Mode with ties resolved to the lowest code.
  const auto mode = static_cast<double>(
      std::max_element(frequency.begin(), frequency.end()) -
      frequency.begin());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (missing[i]) {
      out.values[i] = mode;
      ++out.missing;
    }
  }
  return out;
}

Dataset build_dataset(const CsvTable& table, std::ptrdiff_t target_col,
                      TaskKind task) {
  std::vector<std::size_t> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (target_col >= 0 &&
        is_missing(table.rows[r][static_cast<std::size_t>(target_col)])) {
      continue;
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw Error("CSV has zero usable rows");

  Dataset ds;
  ds.task = task;
  const std::size_t n = rows.size();
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (static_cast<std::ptrdiff_t>(c) != target_col) feature_cols.push_back(c);
  }
  ds.X.resize(static_cast<Eigen::Index>(n),
              static_cast<Eigen::Index>(feature_cols.size()));
  std::size_t missing = 0;
  for (std::size_t j = 0; j < feature_cols.size(); ++j) {
    EncodedColumn col = encode_feature(table, feature_cols[j], rows);
    missing += col.missing;
    for (std::size_t i = 0; i < n; ++i) {
      ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          col.values[i];
    }
    ds.feature_names.push_back(table.header[feature_cols[j]]);
  }
  ds.missing_rate =
      feature_cols.empty()
          ? 0.0
          : static_cast<double>(missing) /
                static_cast<double>(n * feature_cols.size());

  ds.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (target_col < 0) return ds;
  const auto tc = static_cast<std::size_t>(target_col);
  ds.target_name = table.header[tc];
  if (task == TaskKind::kRegression) {
    ds.class_count = 1;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      if (parse_number(table.rows[rows[i]][tc], v) != CellParse::kNumber) {
        throw ParseError("target column '" + ds.target_name + "' row " +
                             std::to_string(rows[i] + 2) + ": cannot parse '" +
                             table.rows[rows[i]][tc] + "' as a number",
                         rows[i] + 2, tc + 1);
      }
      ds.y(static_cast<Eigen::Index>(i)) = v;
    }
    return ds;
  }

  // Classification: numeric labels map by sorted value, others by first
  // appearance.
  bool all_numeric = true;
  std::vector<double> numeric(n);
  for (std::size_t i = 0; i < n && all_numeric; ++i) {
    all_numeric =
        parse_number(table.rows[rows[i]][tc], numeric[i]) == CellParse::kNumber;
  }
  if (all_numeric) {
    std::vector<double> levels = numeric;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (std::size_t i = 0; i < n; ++i) {
      ds.y(static_cast<Eigen::Index>(i)) = static_cast<double>(
          std::lower_bound(levels.begin(), levels.end(), numeric[i]) -
          levels.begin());
    }
    ds.class_count = static_cast<int>(levels.size());
  } else {
    std::unordered_map<std::string, int> codes;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string key(trim(table.rows[rows[i]][tc]));
      auto it = codes.emplace(key, static_cast<int>(codes.size())).first;
      ds.y(static_cast<Eigen::Index>(i)) = it->second;
    }
    ds.class_count = static_cast<int>(codes.size());
  }
  return ds;
}

CsvTable read_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv_table(in);
}

}  // namespace

std::string_view to_string(TaskKind task) {
  return task == TaskKind::kClassification ? "classification" : "regression";
}

TaskKind parse_task_kind(std::string_view text) {
  if (text == "classification" || text == "cls") return TaskKind::kClassification;
  if (text == "regression" || text == "reg") return TaskKind::kRegression;
  throw Error("unknown task kind '" + std::string(text) + "'");
}

void Dataset::validate() const {
  if (X.rows() < 10) throw Error("dataset needs at least 10 rows");
  if (X.cols() < 2) throw Error("dataset needs at least 2 features");
  if (y.size() != X.rows()) throw Error("target length does not match rows");
  if (static_cast<Eigen::Index>(feature_names.size()) != X.cols()) {
    throw Error("feature name count does not match columns");
  }
  if (!X.allFinite() || !y.allFinite()) throw Error("dataset has non-finite values");
  if (task == TaskKind::kClassification) {
    if (class_count < 1) throw Error("class_count must be positive");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double v = y(i);
      if (v != std::floor(v) || v < 0 || v >= class_count) {
        throw Error("classification label out of range at row " +
                    std::to_string(i));
      }
    }
  }
}

Dataset Dataset::subset(std::span<const Eigen::Index> row_indices) const {
  Dataset out;
  out.task = task;
  out.feature_names = feature_names;
  out.target_name = target_name;
  out.class_count = class_count;
  out.missing_rate = missing_rate;
  const auto m = static_cast<Eigen::Index>(row_indices.size());
  out.X.resize(m, X.cols());
  out.y.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.X.row(i) = X.row(row_indices[static_cast<std::size_t>(i)]);
    out.y(i) = y(row_indices[static_cast<std::size_t>(i)]);
  }
  return out;
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable table;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (content.rfind("\xEF\xBB\xBF", 0) == 0) content.erase(0, 3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", line, 0);
  if (!field.empty() && field.back() == '\r') field.pop_back();
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ParseError("CSV has no header row", 1, 0);

  table.header = std::move(records.front());
  for (auto& h : table.header) h = std::string(trim(h));
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw ParseError("row " + std::to_string(r + 1) + " has " +
                           std::to_string(records[r].size()) +
                           " fields, header has " +
                           std::to_string(table.header.size()),
                       r + 1, 0);
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

Dataset parse_csv(std::istream& in, std::string_view target_column,
                  TaskKind task) {
  const CsvTable table = read_csv_table(in);
  const auto it =
      std::find(table.header.begin(), table.header.end(), target_column);
  if (it == table.header.end()) {
    throw Error("target column '" + std::string(target_column) +
                "' not found in header");
  }
  return build_dataset(table, it - table.header.begin(), task);
}

Dataset load_csv(const std::filesystem::path& path,
                 std::string_view target_column, TaskKind task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_csv(in, target_column, task);
}

Dataset load_features_csv(const std::filesystem::path& path) {
  return build_dataset(read_table_file(path), -1, TaskKind::kRegression);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  std::vector<std::string> row = data.feature_names;
  row.push_back(data.target_name);
  write_csv_row(out, row);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      row.push_back(format_double(data.X(i, j)));
    }
    row.push_back(format_double(data.y(i)));
    write_csv_row(out, row);
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      double v = 0.0;
      if (parse_number(cell, v) != CellParse::kNumber) {
        throw ParseError("matrix cell '" + cell + "' is not a finite number",
                         line_no, col);
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged matrix row", line_no, 0);
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void write_matrix_csv(const Eigen::MatrixXd& m,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace cforge
