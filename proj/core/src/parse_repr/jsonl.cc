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
#include "xfer/parse_repr/jsonl.h"

#include <fstream>

#include "json.hpp"
#include "xfer/common/error.h"
#include "xfer/parse_repr/bracketed.h"

namespace xfer::parse_repr {
namespace {

using Json = nlohmann::ordered_json;

Json ParseObject(std::string_view line, std::string_view where) {
  Json value;
  try {
    value = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, std::string(where) + ": " + e.what());
  }
  if (!value.is_object()) {
    throw Error(ErrorCode::kFormatError, std::string(where) + ": expected a JSON object");
  }
  return value;
}

template <typename T>
T Field(const Json& object, const char* key, std::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorCode::kFormatError, std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormatError,
                std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string TreeToJson(const ParseTree& tree) {
  Json out;
  out["tokens"] = tree.tokens;
  out["parse"] = ToBracketed(tree);
  return out.dump();
}

ParseTree TreeFromJson(std::string_view line, std::string_view where) {
  Json value = ParseObject(line, where);
  auto tokens = Field<std::vector<std::string>>(value, "tokens", where);
  auto parse = Field<std::string>(value, "parse", where);
  try {
    return ParseBracketed(parse, tokens);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(where) + ": " + e.what());
  }
}

std::string FlatToJson(const FlatRecord& record) {
  Json out;
  out["tokens"] = record.tokens;
  out["coarse"] = record.labels.coarse;
  out["fine"] = record.labels.fine;
  out["stacks"] = record.labels.stacks;
  return out.dump();
}

FlatRecord FlatFromJson(std::string_view line, std::string_view where) {
  Json value = ParseObject(line, where);
  FlatRecord record;
  record.tokens = Field<std::vector<std::string>>(value, "tokens", where);
  record.labels.coarse = Field<std::string>(value, "coarse", where);
  record.labels.fine = Field<std::vector<std::string>>(value, "fine", where);
  record.labels.stacks = Field<std::vector<std::vector<std::string>>>(value, "stacks", where);
  return record;
}

std::vector<std::string> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

void WriteLines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  for (const auto& line : lines) out << line << '\n';
}

}  // namespace xfer::parse_repr
