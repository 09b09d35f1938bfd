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

#include <set>
#include <utility>

#include "editlens/error.h"
#include "editlens/text.h"
#include "json.hpp"

namespace editlens {
namespace {

using json = nlohmann::json;

const json &Require(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string RequireString(const json &obj, const char *key) {
  const json &v = Require(obj, key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("field \"") + key + "\" is not a string");
  }
  return v.get<std::string>();
}

int64_t RequireInt(const json &obj, const char *key) {
  const json &v = Require(obj, key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("field \"") + key + "\" is not an integer");
  }
  return v.get<int64_t>();
}

bool RequireBool(const json &obj, const char *key) {
  const json &v = Require(obj, key);
  if (!v.is_boolean()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("field \"") + key + "\" is not a boolean");
  }
  return v.get<bool>();
}

}  // namespace

FilterPolicy FilterPolicy::FromConfig(const KeyValueConfig &config) {
  FilterPolicy policy;
  policy.drop_bots = config.GetBool("drop-bots");
  policy.keep_minor = config.GetBool("keep-minor");
  policy.article_namespace_only = config.GetBool("article-namespace-only");
  return policy;
}

EditRecord ParseEditRecordLine(const std::string &line) {
  if (!IsValidUtf8(line)) {
    throw Error(ErrorCode::kMalformedInput, "invalid UTF-8");
  }
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedInput, e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kMalformedInput, "not a JSON object");
  }
  EditRecord r;
  r.editor_id = RequireString(obj, "editor");
  r.article_id = RequireString(obj, "article");
  if (auto it = obj.find("title"); it != obj.end()) {
    if (!it->is_string()) {
      throw Error(ErrorCode::kMalformedInput,
                  "field \"title\" is not a string");
    }
    r.title = it->get<std::string>();
  }
  r.lang = RequireString(obj, "lang");
  r.timestamp = RequireInt(obj, "ts");
  r.revision_id = RequireString(obj, "rev");
  r.is_bot = RequireBool(obj, "bot");
  r.is_minor = RequireBool(obj, "minor");
  r.namespace_id = static_cast<int>(RequireInt(obj, "ns"));
  if (r.editor_id.empty()) {
    throw Error(ErrorCode::kMalformedInput, "empty editor");
  }
  if (r.lang.empty()) throw Error(ErrorCode::kMalformedInput, "empty lang");
  if (r.timestamp < 0) {
    throw Error(ErrorCode::kMalformedInput, "negative timestamp");
  }
  return r;
}

ParseReport ParseEditRecords(std::istream &in, const ParseOptions &options) {
  ParseReport report;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    ++report.lines;
    try {
      EditRecord r = ParseEditRecordLine(line);
      if (!seen.emplace(r.lang, r.revision_id).second) {
        ++report.duplicates;
        continue;
      }
      report.records.push_back(std::move(r));
    } catch (const Error &e) {
      report.malformed.push_back({line_no, e.what()});
    }
  }
  if (report.lines > 0 &&
      static_cast<double>(report.malformed.size()) >
          options.max_malformed_fraction * static_cast<double>(report.lines)) {
    throw Error(ErrorCode::kTooManyMalformed,
                std::to_string(report.malformed.size()) + " of " +
                    std::to_string(report.lines) +
                    " lines malformed (first at line " +
                    std::to_string(report.malformed.front().line_no) + ")");
  }
  return report;
}

FilterReport FilterRecords(std::span<const EditRecord> records,
                           const FilterPolicy &policy) {
  FilterReport report;
  for (const EditRecord &r : records) {
    if (policy.drop_bots && r.is_bot) {
      ++report.dropped_bot;
    } else if (policy.article_namespace_only && r.namespace_id != 0) {
      ++report.dropped_namespace;
    } else if (!policy.keep_minor && r.is_minor) {
      ++report.dropped_minor;
    } else {
      report.kept.push_back(r);
    }
  }
  return report;
}

std::string EditRecordToJson(const EditRecord &r) {
  // Field order follows the documented schema.
  nlohmann::ordered_json obj;
  obj["editor"] = r.editor_id;
  obj["article"] = r.article_id;
  if (!r.title.empty()) obj["title"] = r.title;
  obj["lang"] = r.lang;
  obj["ts"] = r.timestamp;
  obj["rev"] = r.revision_id;
  obj["bot"] = r.is_bot;
  obj["minor"] = r.is_minor;
  obj["ns"] = r.namespace_id;
  return obj.dump();
}

void WriteEditRecords(std::span<const EditRecord> records, std::ostream &out) {
  for (const EditRecord &r : records) out << EditRecordToJson(r) << '\n';
}

}  // namespace editlens
