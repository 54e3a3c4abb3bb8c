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

#include "causalforge/recipe.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include "causalforge/common.hpp"

namespace cforge {

FeatureRecipe FeatureRecipe::source_of(int column) {
  if (column < 0) throw ContractViolation("FeatureRecipe: negative source column");
  FeatureRecipe r;
  r.kind = Kind::kSource;
  r.source = column;
  return r;
}

FeatureRecipe FeatureRecipe::unary(OpId op, FeatureRecipe child) {
  if (is_binary(op)) throw ContractViolation("FeatureRecipe::unary: binary operator");
  FeatureRecipe r;
  r.kind = Kind::kUnary;
  r.op = op;
  r.children.push_back(std::move(child));
  return r;
}

FeatureRecipe FeatureRecipe::binary(OpId op, FeatureRecipe left, FeatureRecipe right) {
  if (!is_binary(op)) throw ContractViolation("FeatureRecipe::binary: unary operator");
  FeatureRecipe r;
  r.kind = Kind::kBinary;
  r.op = op;
  r.children.push_back(std::move(left));
  r.children.push_back(std::move(right));
  return r;
}

int op_depth(const FeatureRecipe& r) {
  int deepest = -1;
  for (const auto& c : r.children) deepest = std::max(deepest, op_depth(c));
  return deepest + 1;
}

namespace {

void collect_sources(const FeatureRecipe& r, std::vector<int>& out) {
  if (r.kind == FeatureRecipe::Kind::kSource) {
    if (std::find(out.begin(), out.end(), r.source) == out.end()) out.push_back(r.source);
    return;
  }
  for (const auto& c : r.children) collect_sources(c, out);
}

void serialize_into(const FeatureRecipe& r, std::string& out) {
  if (r.kind == FeatureRecipe::Kind::kSource) {
    out += "src:";
    out += std::to_string(r.source);
    return;
  }
  out += op_name(r.op);
  out += '(';
  for (std::size_t i = 0; i < r.children.size(); ++i) {
    if (i > 0) out += ", ";
    serialize_into(r.children[i], out);
  }
  out += ')';
}

class RecipeParser {
 public:
  explicit RecipeParser(std::string_view text) : text_(text) {}

  FeatureRecipe parse() {
    FeatureRecipe r = node();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("recipe: " + what + " at column " + std::to_string(pos_ + 1), 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  FeatureRecipe node() {
    const std::size_t start = pos_;
    const std::string_view name = word();
    if (name.empty()) fail("expected operator or 'src'");
    if (name == "src") {
      expect(':');
      skip_space();
      int column = 0;
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      const auto [ptr, ec] = std::from_chars(first, last, column);
      if (ec != std::errc() || column < 0) fail("expected column index");
      pos_ += static_cast<std::size_t>(ptr - first);
      return FeatureRecipe::source_of(column);
    }
    const auto op = op_from_name(name);
    if (!op) {
      pos_ = start;
      skip_space();
      fail("unknown operator '" + std::string(name) + "'");
    }
    expect('(');
    FeatureRecipe first = node();
    if (!is_binary(*op)) {
      expect(')');
      return FeatureRecipe::unary(*op, std::move(first));
    }
    expect(',');
    FeatureRecipe second = node();
    expect(')');
    return FeatureRecipe::binary(*op, std::move(first), std::move(second));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<int> source_columns(const FeatureRecipe& r) {
  std::vector<int> out;
  collect_sources(r, out);
  return out;
}

CausalRole inherited_role(const FeatureRecipe& r, std::span<const CausalRole> source_roles) {
  auto best = CausalRole::kOther;
  for (int s : source_columns(r)) {
    if (s >= static_cast<int>(source_roles.size())) {
      throw ContractViolation("inherited_role: source column without a role");
    }
    best = std::min(best, source_roles[static_cast<std::size_t>(s)]);
  }
  return best;
}

std::string serialize_recipe(const FeatureRecipe& r) {
  std::string out;
  serialize_into(r, out);
  return out;
}

FeatureRecipe parse_recipe(std::string_view text) { return RecipeParser(text).parse(); }

Eigen::VectorXd evaluate_recipe(const FeatureRecipe& r, const Eigen::MatrixXd& source) {
  switch (r.kind) {
    case FeatureRecipe::Kind::kSource:
      if (r.source >= source.cols()) {
        throw ContractViolation("evaluate_recipe: src:" + std::to_string(r.source) +
                                " out of range for " + std::to_string(source.cols()) + " columns");
      }
      return source.col(r.source);
    case FeatureRecipe::Kind::kUnary:
      return apply_unary(r.op, evaluate_recipe(r.children[0], source));
    case FeatureRecipe::Kind::kBinary:
      return apply_binary(r.op, evaluate_recipe(r.children[0], source),
                          evaluate_recipe(r.children[1], source));
  }
  throw ContractViolation("evaluate_recipe: corrupt recipe");
}

std::vector<FeatureRecipe> read_recipe_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open recipe file " + path);
  std::vector<FeatureRecipe> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(parse_recipe(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    }
  }
  return out;
}

void write_recipe_file(const std::string& path, std::span<const FeatureRecipe> recipes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write recipe file " + path);
  for (const auto& r : recipes) out << serialize_recipe(r) << '\n';
}

}  // namespace cforge
