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

#include "editlens/ingest.h"

#include <gtest/gtest.h>

#include <sstream>

#include "editlens/error.h"
#include "editlens/random.h"

namespace editlens {
namespace {

std::vector<EditRecord> RandomRecords(Rng &rng, int n) {
  std::vector<EditRecord> out;
  for (int i = 0; i < n; ++i) {
    EditRecord r;
    r.editor_id = "u" + std::to_string(UniformIndex(rng, 5));
    r.article_id = "A" + std::to_string(UniformIndex(rng, 4));
    r.lang = UniformIndex(rng, 2) ? "en" : "de";
    r.timestamp = static_cast<int64_t>(UniformIndex(rng, 100000));
    r.revision_id = "r" + std::to_string(i);
    r.is_bot = UniformIndex(rng, 5) == 0;
    r.is_minor = UniformIndex(rng, 3) == 0;
    r.namespace_id = UniformIndex(rng, 4) == 0 ? 1 : 0;
    out.push_back(r);
  }
  return out;
}

TEST(ParseEditRecordsTest, ParsesOneRecord) {
  std::istringstream in(
      R"({"editor":"u1","article":"A","lang":"en","ts":100,"rev":"r1","bot":false,"minor":false,"ns":0})"
      "\n");
  const ParseReport report = ParseEditRecords(in);
  ASSERT_EQ(report.records.size(), 1u);
  const EditRecord &r = report.records[0];
  EXPECT_EQ(r.editor_id, "u1");
  EXPECT_EQ(r.article_id, "A");
  EXPECT_EQ(r.lang, "en");
  EXPECT_EQ(r.timestamp, 100);
  EXPECT_EQ(r.revision_id, "r1");
  EXPECT_FALSE(r.is_bot);
  EXPECT_FALSE(r.is_minor);
  EXPECT_EQ(r.namespace_id, 0);
  EXPECT_TRUE(report.malformed.empty());
}

TEST(ParseEditRecordsTest, EmptyInput) {
  std::istringstream in("");
  const ParseReport report = ParseEditRecords(in);
  EXPECT_TRUE(report.records.empty());
  EXPECT_TRUE(report.malformed.empty());
}

TEST(ParseEditRecordsTest, MissingTimestampIsCollected) {
  std::ostringstream text;
  for (int i = 0; i < 20; ++i) {
    text << R"({"editor":"u1","article":"A","lang":"en","ts":)" << i
         << R"(,"rev":"r)" << i << R"(","bot":false,"minor":false,"ns":0})"
         << "\n";
  }
  text << R"({"editor":"u1","article":"A","lang":"en","rev":"rx","bot":false,"minor":false,"ns":0})"
       << "\n";
  std::istringstream in(text.str());
  const ParseReport report = ParseEditRecords(in);
  EXPECT_EQ(report.records.size(), 20u);
  ASSERT_EQ(report.malformed.size(), 1u);
  EXPECT_EQ(report.malformed[0].line_no, 21u);
}

TEST(ParseEditRecordsTest, TooManyMalformedIsFatal) {
  std::istringstream in("garbage\nmore garbage\n"
      R"({"editor":"u1","article":"A","lang":"en","ts":1,"rev":"r1","bot":false,"minor":false,"ns":0})"
      "\n");
  try {
    ParseEditRecords(in);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyMalformed);
  }
}

TEST(ParseEditRecordsTest, DuplicateBroadcastsAreDropped) {
  const std::string line =
      R"({"editor":"u1","article":"A","lang":"en","ts":1,"rev":"r1","bot":false,"minor":false,"ns":0})";
  std::istringstream in(line + "\n" + line + "\n");
  const ParseReport report = ParseEditRecords(in);
  EXPECT_EQ(report.records.size(), 1u);
  EXPECT_EQ(report.duplicates, 1u);
}

TEST(ParseEditRecordsTest, WriteParseRoundTrip) {
  Rng rng(3);
  const auto records = RandomRecords(rng, 50);
  std::stringstream buf;
  WriteEditRecords(records, buf);
  const ParseReport report = ParseEditRecords(buf);
  EXPECT_EQ(report.records, records);
}

TEST(FilterRecordsTest, PolicyExamples) {
  EditRecord bot;
  bot.is_bot = true;
  EditRecord minor;
  minor.is_minor = true;
  EditRecord talk;
  talk.namespace_id = 1;
  const FilterPolicy policy;
  EXPECT_TRUE(FilterRecords(std::vector{bot}, policy).kept.empty());
  EXPECT_EQ(FilterRecords(std::vector{minor}, policy).kept.size(), 1u);
  EXPECT_TRUE(FilterRecords(std::vector{talk}, policy).kept.empty());
  FilterPolicy drop_minor;
  drop_minor.keep_minor = false;
  EXPECT_TRUE(FilterRecords(std::vector{minor}, drop_minor).kept.empty());
}

TEST(FilterRecordsTest, PolicyFromConfigRequiresEveryFlag) {
  EXPECT_THROW(FilterPolicy::FromConfig(KeyValueConfig::Parse("drop-bots = true\n")),
               Error);
  const auto p = FilterPolicy::FromConfig(KeyValueConfig::Parse(
      "drop-bots = false\nkeep-minor = no\narticle-namespace-only = 1\n"));
  EXPECT_FALSE(p.drop_bots);
  EXPECT_FALSE(p.keep_minor);
  EXPECT_TRUE(p.article_namespace_only);
}

TEST(FilterRecordsTest, IdempotentSubsequenceAndConserving) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto records = RandomRecords(rng, 40);
    FilterPolicy policy;
    policy.drop_bots = UniformIndex(rng, 2);
    policy.keep_minor = UniformIndex(rng, 2);
    policy.article_namespace_only = UniformIndex(rng, 2);
    const FilterReport once = FilterRecords(records, policy);
    const FilterReport twice = FilterRecords(once.kept, policy);
    EXPECT_EQ(once.kept, twice.kept);
    EXPECT_EQ(records.size(), once.kept.size() + once.dropped_bot +
                                  once.dropped_namespace + once.dropped_minor);
    std::size_t j = 0;
    for (const EditRecord &r : records) {
      if (j < once.kept.size() && once.kept[j] == r) ++j;
    }
    EXPECT_EQ(j, once.kept.size());
  }
}

}  // namespace
}  // namespace editlens
