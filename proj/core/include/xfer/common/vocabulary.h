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

#ifndef XFER_COMMON_VOCABULARY_H_
#define XFER_COMMON_VOCABULARY_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace xfer {

// Dense string <-> id map. With an unknown token, Id() of a missing string
// returns that token's id; without one, it throws kInvalidArgument.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Ids follow `tokens`; duplicates are dropped.
  explicit Vocabulary(std::span<const std::string> tokens);
  static Vocabulary WithUnknown(const std::string& unknown = "<unk>");

  int Add(const std::string& token);
  bool Contains(const std::string& token) const { return index_.count(token) > 0; }
  int Id(const std::string& token) const;
  std::vector<int> Ids(std::span<const std::string> tokens) const;
  const std::string& Token(int id) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  bool has_unknown() const { return unknown_ >= 0; }

  // One token per line; the unknown token (if any) is listed first and
  // marked by a "#unk " line prefix.
  void Save(const std::string& path) const;
  static Vocabulary Load(const std::string& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.unknown_ == b.unknown_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  int unknown_ = -1;
};

}  // namespace xfer

#endif  // XFER_COMMON_VOCABULARY_H_
