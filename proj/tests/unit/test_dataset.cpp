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

#include <sstream>

#include <gtest/gtest.h>

#include "causalforge/common.hpp"
#include "causalforge/dataset.hpp"

namespace cforge {
namespace {

TEST(Csv, QuotedFieldsAndEscapes) {
  std::istringstream in("a,b\n\"x, y\",\"say \"\"hi\"\"\"\n1,2\n");
  const CsvTable t = read_csv_table(in);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "x, y");
  EXPECT_EQ(t.rows[0][1], "say \"hi\"");
  EXPECT_EQ(csv_escape("x, y"), "\"x, y\"");
  EXPECT_EQ(csv_escape("plain"), "plain");
}

TEST(Csv, RaggedRowIsParseError) {
  std::istringstream in("a,b\n1,2,3\n");
  EXPECT_THROW(read_csv_table(in), ParseError);
}

TEST(Csv, NumericCategoricalAndMissing) {
  std::istringstream in(
      "num,cat,y\n"
      "1,red,0.5\n"
      ",blue,1.5\n"
      "3,red,\n"
      "5,,2.5\n");
  const Dataset ds = parse_csv(in, "y", TaskKind::kRegression);
  // Row with a missing target is dropped.
  ASSERT_EQ(ds.rows(), 3);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"num", "cat"}));
  EXPECT_DOUBLE_EQ(ds.X(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(ds.X(1, 0), 3.0);  // mean of 1 and 5
  EXPECT_DOUBLE_EQ(ds.X(2, 0), 5.0);
  EXPECT_DOUBLE_EQ(ds.X(0, 1), 0.0);  // red
  EXPECT_DOUBLE_EQ(ds.X(1, 1), 1.0);  // blue
  EXPECT_DOUBLE_EQ(ds.X(2, 1), 0.0);  // mode (red / blue tie -> lowest code)
  EXPECT_DOUBLE_EQ(ds.missing_rate, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(ds.y(2), 2.5);
}

TEST(Csv, ClassificationLabels) {
  std::istringstream numeric("x,y\n1,10\n2,5\n3,10\n");
  const Dataset a = parse_csv(numeric, "y", TaskKind::kClassification);
  EXPECT_EQ(a.class_count, 2);
  EXPECT_EQ(a.y(0), 1.0);
  EXPECT_EQ(a.y(1), 0.0);
  std::istringstream text("x,y\n1,cat\n2,dog\n3,cat\n");
  const Dataset b = parse_csv(text, "y", TaskKind::kClassification);
  EXPECT_EQ(b.class_count, 2);
  EXPECT_EQ(b.y(0), 0.0);
  EXPECT_EQ(b.y(1), 1.0);
}

TEST(Csv, MissingTargetColumn) {
  std::istringstream in("a,b\n1,2\n");
  EXPECT_THROW(parse_csv(in, "y", TaskKind::kRegression), Error);
}

TEST(Csv, BadNumberReportsLocation) {
  std::istringstream in("a,b,y\n1,2,3\n4,5,6\n7,8,oops\n");
  try {
    parse_csv(in, "y", TaskKind::kRegression);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Dataset, ValidateRejectsTinyInputs) {
  Dataset ds;
  ds.X = Eigen::MatrixXd::Zero(9, 3);
  ds.y = Eigen::VectorXd::Zero(9);
  ds.feature_names = {"a", "b", "c"};
  EXPECT_THROW(ds.validate(), Error);
  ds.X = Eigen::MatrixXd::Zero(10, 3);
  ds.y = Eigen::VectorXd::Zero(10);
  EXPECT_NO_THROW(ds.validate());
  ds.X(0, 0) = std::nan("");
  EXPECT_THROW(ds.validate(), Error);
}

TEST(Dataset, FormatDoubleRoundTrips) {
  Rng rng = make_rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = normal01(rng) * std::pow(10.0, static_cast<int>(uniform_index(rng, 20)) - 10);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Dataset, SubsetKeepsMetadata) {
  Dataset ds;
  ds.X = Eigen::MatrixXd::Random(12, 2);
  ds.y = Eigen::VectorXd::LinSpaced(12, 0, 11);
  ds.feature_names = {"a", "b"};
  const std::vector<Eigen::Index> rows = {3, 7};
  const Dataset s = ds.subset(rows);
  EXPECT_EQ(s.rows(), 2);
  EXPECT_EQ(s.y(1), 7.0);
  EXPECT_EQ(s.X.row(0), ds.X.row(3));
  EXPECT_EQ(s.feature_names, ds.feature_names);
}

}  // namespace
}  // namespace cforge
