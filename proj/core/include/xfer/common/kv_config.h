// Copyright 2026 The Xfer Authors.
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
#ifndef XFER_COMMON_KV_CONFIG_H_
#define XFER_COMMON_KV_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xfer {

// Plain-text configuration: one "key = value" pair per line, '#' starts a
// comment, blank lines ignored. Keys are case-sensitive; later assignments
// override earlier ones. Serialization emits keys in sorted order so a
// round trip is byte-stable.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig Parse(std::string_view text, std::string_view origin = "<string>");
  static KeyValueConfig Load(const std::string& path);

  // Applies "key=value" overrides (e.g. from --set flags).
  void ApplyOverrides(const std::vector<std::string>& assignments);

  void Set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> Find(const std::string& key) const;

  std::string GetString(const std::string& key, const std::string& fallback) const;
  int64_t GetInt(const std::string& key, int64_t fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;

  std::string Serialize() const;
  void Save(const std::string& path) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace xfer

#endif  // XFER_COMMON_KV_CONFIG_H_
