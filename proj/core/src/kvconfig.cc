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

#include <charconv>
#include <fstream>
#include <sstream>

#include "editlens/error.h"
#include "editlens/text.h"

namespace editlens {

KeyValueConfig KeyValueConfig::Parse(std::string_view text) {
  KeyValueConfig config;
  int line_no = 0;
  for (const std::string &raw : SplitString(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(line_no) + ": empty key");
    }
    if (config.entries_.count(key)) {
      throw Error(ErrorCode::kConfig, "duplicate key '" + key + "'");
    }
    config.entries_[key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

void KeyValueConfig::Set(const std::string &key, const std::string &value) {
  entries_[key] = value;
}

bool KeyValueConfig::Has(const std::string &key) const {
  return entries_.count(key) > 0;
}

std::string KeyValueConfig::GetString(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kConfig, "missing required key '" + key + "'");
  }
  return it->second;
}

std::string KeyValueConfig::GetString(const std::string &key,
                                      const std::string &def) const {
  return Has(key) ? GetString(key) : def;
}

int64_t KeyValueConfig::GetInt(const std::string &key) const {
  const std::string v = GetString(key);
  int64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kConfig,
                "key '" + key + "': not an integer: '" + v + "'");
  }
  return out;
}

int64_t KeyValueConfig::GetInt(const std::string &key, int64_t def) const {
  return Has(key) ? GetInt(key) : def;
}

double KeyValueConfig::GetDouble(const std::string &key) const {
  const std::string v = GetString(key);
  double out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kConfig,
                "key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

double KeyValueConfig::GetDouble(const std::string &key, double def) const {
  return Has(key) ? GetDouble(key) : def;
}

bool KeyValueConfig::GetBool(const std::string &key) const {
  const std::string v = GetString(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::kConfig,
              "key '" + key + "': not a boolean: '" + v + "'");
}

bool KeyValueConfig::GetBool(const std::string &key, bool def) const {
  return Has(key) ? GetBool(key) : def;
}

void KeyValueConfig::RejectUnknown(const std::set<std::string> &allowed) const {
  for (const auto &[key, value] : entries_) {
    if (!allowed.count(key)) {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
    }
  }
}

}  // namespace editlens
