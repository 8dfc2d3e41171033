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
#include "xfer/common/kv_config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer {
namespace {

std::pair<std::string, std::string> SplitAssignment(std::string_view line,
                                                    std::string_view where) {
  size_t eq = line.find('=');
  Require(eq != std::string_view::npos, ErrorCode::kFormatError,
          std::string(where) + ": expected key = value");
  std::string key(Trim(line.substr(0, eq)));
  std::string value(Trim(line.substr(eq + 1)));
  Require(!key.empty(), ErrorCode::kFormatError, std::string(where) + ": empty key");
  return {key, value};
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::string_view text, std::string_view origin) {
  KeyValueConfig config;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    auto [key, value] =
        SplitAssignment(line, std::string(origin) + ":" + std::to_string(line_no));
    config.values_[key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

void KeyValueConfig::ApplyOverrides(const std::vector<std::string>& assignments) {
  for (const std::string& a : assignments) {
    auto [key, value] = SplitAssignment(a, "override '" + a + "'");
    values_[key] = value;
  }
}

std::optional<std::string> KeyValueConfig::Find(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::GetString(const std::string& key,
                                      const std::string& fallback) const {
  return Find(key).value_or(fallback);
}

int64_t KeyValueConfig::GetInt(const std::string& key, int64_t fallback) const {
  auto v = Find(key);
  if (!v) return fallback;
  int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  Require(ec == std::errc() && ptr == v->data() + v->size(), ErrorCode::kFormatError,
          "config key '" + key + "' is not an integer: " + *v);
  return out;
}

double KeyValueConfig::GetDouble(const std::string& key, double fallback) const {
  auto v = Find(key);
  if (!v) return fallback;
  try {
    size_t used = 0;
    double out = std::stod(*v, &used);
    Require(used == v->size(), ErrorCode::kFormatError,
            "config key '" + key + "' is not a number: " + *v);
    return out;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kFormatError, "config key '" + key + "' is not a number: " + *v);
  }
}

bool KeyValueConfig::GetBool(const std::string& key, bool fallback) const {
  auto v = Find(key);
  if (!v) return fallback;
  std::string lower = ToLower(*v);
  if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") return true;
  if (lower == "false" || lower == "0" || lower == "no" || lower == "off") return false;
  throw Error(ErrorCode::kFormatError, "config key '" + key + "' is not a boolean: " + *v);
}

std::string KeyValueConfig::Serialize() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key + " = " + value + "\n";
  }
  return out;
}

void KeyValueConfig::Save(const std::string& path) const {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write config " + path);
  out << Serialize();
}

}  // namespace xfer
