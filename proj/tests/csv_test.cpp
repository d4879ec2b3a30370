/*
 * Copyright 2026 The Fairway Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairway/csv.hpp"

#include <gtest/gtest.h>

#include "fairway/error.hpp"

namespace fairway {
namespace {

TEST(Csv, ParsesHeaderAndRows) {
  const CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"4", "5", "6"}));
}

TEST(Csv, QuotedFieldsKeepCommasQuotesAndNewlines) {
  const CsvTable t =
      parse_csv("name,note\n\"Smith, J\",\"said \"\"hi\"\"\"\nx,\"two\nlines\"\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "Smith, J");
  EXPECT_EQ(t.rows[0][1], "said \"hi\"");
  EXPECT_EQ(t.rows[1][1], "two\nlines");
}

TEST(Csv, AcceptsCrlfAndMissingFinalNewline) {
  const CsvTable t = parse_csv("a,b\r\n1,2\r\n3,4");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"3", "4"}));
}

TEST(Csv, SkipsBlankLines) {
  const CsvTable t = parse_csv("a,b\n\n1,2\n\n");
  EXPECT_EQ(t.rows.size(), 1u);
}

TEST(Csv, KeepsEmptyFields) {
  const CsvTable t = parse_csv("a,b,c\n,,\n");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"", "", ""}));
}

TEST(Csv, RaggedRowIsDataError) {
  EXPECT_THROW(parse_csv("a,b\n1,2,3\n"), DataError);
  EXPECT_THROW(parse_csv("a,b\n1\n"), DataError);
}

TEST(Csv, UnterminatedQuoteIsDataError) {
  EXPECT_THROW(parse_csv("a\n\"open\n"), DataError);
}

TEST(Csv, EmptyInputGivesEmptyTable) {
  const CsvTable t = parse_csv("");
  EXPECT_TRUE(t.header.empty());
  EXPECT_TRUE(t.rows.empty());
}

TEST(Csv, MissingFileIsIoFailure) {
  EXPECT_THROW(read_csv("/nonexistent/fairway/none.csv"), IoFailure);
}

}  // namespace
}  // namespace fairway
