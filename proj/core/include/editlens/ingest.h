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

#ifndef EDITLENS_INGEST_H_
#define EDITLENS_INGEST_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "editlens/kvconfig.h"

namespace editlens {

// One revision event from the edit metadata stream.
struct EditRecord {
  std::string editor_id;
  std::string article_id;
  std::string title;
  std::string lang;
  int64_t timestamp = 0;  // seconds since epoch, UTC
  std::string revision_id;
  bool is_bot = false;
  bool is_minor = false;
  int namespace_id = 0;  // 0 = article

  bool operator==(const EditRecord &) const = default;
};

struct FilterPolicy {
  bool drop_bots = true;
  bool keep_minor = true;
  bool article_namespace_only = true;

  // Every flag must be present in the config; there are no silent defaults.
  static FilterPolicy FromConfig(const KeyValueConfig &config);
};

struct MalformedLine {
  std::size_t line_no = 0;  // 1-based
  std::string reason;
};

struct ParseReport {
  std::vector<EditRecord> records;
  std::vector<MalformedLine> malformed;
  std::size_t lines = 0;       // non-blank lines seen
  std::size_t duplicates = 0;  // repeated (lang, revision_id) broadcasts
};

struct ParseOptions {
  // Parsing fails hard when malformed lines exceed this share of non-blank
  // lines.
  double max_malformed_fraction = 0.10;
};

// Parses the JSON-lines edit metadata format. Records come back in file
// order. Malformed lines are collected in the report; a line whose
// (lang, rev) was already seen is dropped and counted as a duplicate.
// Throws Error(kTooManyMalformed) when the malformed share is too high.
ParseReport ParseEditRecords(std::istream &in, const ParseOptions &options = {});

// Parses a single line; throws Error(kMalformedInput) with the reason.
EditRecord ParseEditRecordLine(const std::string &line);

struct FilterReport {
  std::vector<EditRecord> kept;
  std::size_t dropped_bot = 0;
  std::size_t dropped_namespace = 0;
  std::size_t dropped_minor = 0;
};

// Each dropped record is attributed to the first matching rule in the
// order bot, namespace, minor, so
// |input| = |kept| + dropped_bot + dropped_namespace + dropped_minor.
FilterReport FilterRecords(std::span<const EditRecord> records,
                           const FilterPolicy &policy);

// Writes records in the same JSON-lines schema ParseEditRecords reads.
void WriteEditRecords(std::span<const EditRecord> records, std::ostream &out);
std::string EditRecordToJson(const EditRecord &record);

}  // namespace editlens

#endif  // EDITLENS_INGEST_H_
