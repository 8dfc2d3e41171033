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
#include "xfer/common/vocabulary.h"

#include <fstream>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer {

Vocabulary::Vocabulary(std::span<const std::string> tokens) {
  for (const std::string& token : tokens) Add(token);
}

Vocabulary Vocabulary::WithUnknown(const std::string& unknown) {
  Vocabulary vocabulary;
  vocabulary.unknown_ = vocabulary.Add(unknown);
  return vocabulary;
}

int Vocabulary::Add(const std::string& token) {
  auto [it, inserted] = index_.emplace(token, size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

int Vocabulary::Id(const std::string& token) const {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  if (unknown_ >= 0) return unknown_;
  throw Error(ErrorCode::kInvalidArgument, "unknown vocabulary entry '" + token + "'");
}

std::vector<int> Vocabulary::Ids(std::span<const std::string> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string& token : tokens) ids.push_back(Id(token));
  return ids;
}

const std::string& Vocabulary::Token(int id) const {
  Require(id >= 0 && id < size(), ErrorCode::kInvalidArgument,
          "vocabulary id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

void Vocabulary::Save(const std::string& path) const {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  for (int id = 0; id < size(); ++id) {
    if (id == unknown_) out << "#unk ";
    out << tokens_[id] << '\n';
  }
}

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open vocabulary " + path);
  Vocabulary vocabulary;
  std::string line;
  while (std::getline(in, line)) {
    if (StartsWith(line, "#unk ")) {
      vocabulary.unknown_ = vocabulary.Add(line.substr(5));
    } else {
      vocabulary.Add(line);
    }
  }
  return vocabulary;
}

}  // namespace xfer
