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

#ifndef EDITLENS_KVCONFIG_H_
#define EDITLENS_KVCONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace editlens {

// Flat "key = value" configuration. '#' starts a comment; blank lines are
// ignored; a repeated key is an error. All accessors throw
// Error(kConfig) with the offending key on a bad value.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig Parse(std::string_view text);
  static KeyValueConfig Load(const std::filesystem::path &path);

  // Later values win. Used for CLI overrides.
  void Set(const std::string &key, const std::string &value);

  bool Has(const std::string &key) const;
  const std::map<std::string, std::string> &entries() const {
    return entries_;
  }

  std::string GetString(const std::string &key) const;
  std::string GetString(const std::string &key, const std::string &def) const;
  int64_t GetInt(const std::string &key) const;
  int64_t GetInt(const std::string &key, int64_t def) const;
  double GetDouble(const std::string &key) const;
  double GetDouble(const std::string &key, double def) const;
  bool GetBool(const std::string &key) const;
  bool GetBool(const std::string &key, bool def) const;

  // Throws if any key is not in `allowed`.
  void RejectUnknown(const std::set<std::string> &allowed) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace editlens

#endif  // EDITLENS_KVCONFIG_H_
