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

#ifndef XFER_EMBED_ALIGN_EMBEDDINGS_H_
#define XFER_EMBED_ALIGN_EMBEDDINGS_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xfer/nn/autograd.h"

namespace xfer::embed_align {

// Word -> vector map with a fixed dimension. Rows of `vectors` follow
// `words`.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::vector<std::string> words, nn::Matrix vectors);

  // Text format: header "count dim", then one "word v1 ... vdim" per line.
  // Throws kFormatError with the line number on malformed input.
  static EmbeddingTable Load(const std::string& path);
  void Save(const std::string& path) const;

  size_t size() const { return words_.size(); }
  int dim() const { return static_cast<int>(vectors_.cols()); }
  const std::vector<std::string>& words() const { return words_; }
  const nn::Matrix& vectors() const { return vectors_; }
  nn::Matrix& mutable_vectors() { return vectors_; }
  std::optional<int> Find(const std::string& word) const;
  // Row for `word`, or nullopt.
  std::optional<nn::Vector> Lookup(const std::string& word) const;

 private:
  std::vector<std::string> words_;
  nn::Matrix vectors_;
  std::unordered_map<std::string, int> index_;
};

// Unit-length rows, then zero column means, then unit-length rows again.
// Throws kDegenerateInput when a row has zero norm at either normalization.
nn::Matrix Preprocess(const nn::Matrix& vectors);
EmbeddingTable Preprocess(const EmbeddingTable& table);

// Two-column TSV "source<TAB>target"; '#' lines and blank lines skipped.
using SeedDictionary = std::vector<std::pair<std::string, std::string>>;
SeedDictionary LoadSeedDictionary(const std::string& path);
void SaveSeedDictionary(const SeedDictionary& dictionary, const std::string& path);

// The 11 domain keywords (weather / alarm / reminder) paired with their
// translations; `language` is "es" or "th".
SeedDictionary DefaultSeedDictionary(const std::string& language);

}  // namespace xfer::embed_align

#endif  // XFER_EMBED_ALIGN_EMBEDDINGS_H_
