// Copyright 2026 The Editlens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "editlens/kvconfig.h"

#include <gtest/gtest.h>

#include "editlens/error.h"

namespace editlens {
namespace {

TEST(KeyValueConfigTest, ParsesValuesAndComments) {
  const auto c = KeyValueConfig::Parse(
      "# comment\n"
      "seed = 42\n"
      "\n"
      "ratio=0.25  \n"
      "flag = yes\n"
      "name = en, de\n");
  EXPECT_EQ(c.GetInt("seed"), 42);
  EXPECT_DOUBLE_EQ(c.GetDouble("ratio"), 0.25);
  EXPECT_TRUE(c.GetBool("flag"));
  EXPECT_EQ(c.GetString("name"), "en, de");
  EXPECT_EQ(c.GetInt("missing", 7), 7);
}

TEST(KeyValueConfigTest, RejectsDuplicatesAndBadLines) {
  EXPECT_THROW(KeyValueConfig::Parse("a = 1\na = 2\n"), Error);
  EXPECT_THROW(KeyValueConfig::Parse("no separator\n"), Error);
}

TEST(KeyValueConfigTest, TypedAccessorsValidate) {
  const auto c = KeyValueConfig::Parse("n = 12x\nb = maybe\n");
  try {
    c.GetInt("n");
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("'n'"), std::string::npos);
  }
  EXPECT_THROW(c.GetBool("b"), Error);
  EXPECT_THROW(c.GetString("absent"), Error);
}

TEST(KeyValueConfigTest, OverridesAndUnknownKeys) {
  auto c = KeyValueConfig::Parse("a = 1\n");
  c.Set("a", "2");
  EXPECT_EQ(c.GetInt("a"), 2);
  EXPECT_NO_THROW(c.RejectUnknown({"a"}));
  c.Set("typo", "x");
  EXPECT_THROW(c.RejectUnknown({"a"}), Error);
}

}  // namespace
}  // namespace editlens
