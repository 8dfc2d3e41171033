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
#include "xfer/embed_align/embeddings.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::embed_align {

EmbeddingTable::EmbeddingTable(std::vector<std::string> words, nn::Matrix vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  Require(static_cast<Eigen::Index>(words_.size()) == vectors_.rows(), ErrorCode::kShapeMismatch,
          "embedding table: word count differs from row count");
  for (size_t i = 0; i < words_.size(); ++i) {
    // First occurrence wins for duplicate words.
    index_.emplace(words_[i], static_cast<int>(i));
  }
}

EmbeddingTable EmbeddingTable::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open embeddings " + path);
  std::string line;
  long count = 0, dim = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> count >> dim) || count < 0 ||
      dim <= 0) {
    throw Error(ErrorCode::kFormatError, path + ":1: expected header 'count dim'");
  }
  std::vector<std::string> words;
  nn::Matrix vectors(count, dim);
  for (long r = 0; r < count; ++r) {
    const std::string where = path + ":" + std::to_string(r + 2);
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kFormatError, where + ": expected " + std::to_string(count) +
                                               " vectors, file ends early");
    }
    std::vector<std::string> fields = SplitWhitespace(line);
    if (static_cast<long>(fields.size()) != dim + 1) {
      throw Error(ErrorCode::kFormatError, where + ": expected a word and " +
                                               std::to_string(dim) + " values, got " +
                                               std::to_string(fields.size()) + " fields");
    }
    words.push_back(fields[0]);
    for (long c = 0; c < dim; ++c) {
      try {
        size_t used = 0;
        vectors(r, c) = std::stod(fields[c + 1], &used);
        if (used != fields[c + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::kFormatError,
                    where + ": bad number '" + fields[c + 1] + "'");
      }
    }
  }
  return EmbeddingTable(std::move(words), std::move(vectors));
}

void EmbeddingTable::Save(const std::string& path) const {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  out << words_.size() << ' ' << vectors_.cols() << '\n';
  char buffer[32];
  for (size_t r = 0; r < words_.size(); ++r) {
    out << words_[r];
    for (Eigen::Index c = 0; c < vectors_.cols(); ++c) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", vectors_(r, c));
      out << ' ' << buffer;
    }
    out << '\n';
  }
}

std::optional<int> EmbeddingTable::Find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<nn::Vector> EmbeddingTable::Lookup(const std::string& word) const {
  auto row = Find(word);
  if (!row) return std::nullopt;
  return nn::Vector(vectors_.row(*row).transpose());
}

namespace {

void NormalizeRows(nn::Matrix& m, const char* stage) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double norm = m.row(r).norm();
    Require(norm > 0.0, ErrorCode::kDegenerateInput,
            std::string("zero-norm embedding row ") + std::to_string(r) + " (" + stage + ")");
    m.row(r) /= norm;
  }
}

}  // namespace

nn::Matrix Preprocess(const nn::Matrix& vectors) {
  nn::Matrix m = vectors;
  NormalizeRows(m, "before centering");
  if (m.rows() > 0) m.rowwise() -= m.colwise().mean();
  NormalizeRows(m, "after centering");
  return m;
}

EmbeddingTable Preprocess(const EmbeddingTable& table) {
  return EmbeddingTable(table.words(), Preprocess(table.vectors()));
}

SeedDictionary LoadSeedDictionary(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open dictionary " + path);
  SeedDictionary pairs;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields = Split(trimmed, '\t');
    if (fields.size() != 2 || Trim(fields[0]).empty() || Trim(fields[1]).empty()) {
      throw Error(ErrorCode::kFormatError,
                  path + ":" + std::to_string(number) + ": expected 'source<TAB>target'");
    }
    pairs.emplace_back(std::string(Trim(fields[0])), std::string(Trim(fields[1])));
  }
  return pairs;
}

void SaveSeedDictionary(const SeedDictionary& dictionary, const std::string& path) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  for (const auto& [source, target] : dictionary) out << source << '\t' << target << '\n';
}

SeedDictionary DefaultSeedDictionary(const std::string& language) {
  static const std::vector<std::string> kEnglish = {
      "weather", "forecast", "temperature", "rain",  "hot",     "cold",
      "remind",  "forget",   "alarm",       "cancel", "tomorrow"};
  std::vector<std::string> targets;
  if (language == "es") {
    targets = {"clima", "pronóstico", "temperatura", "lluvia", "caliente", "frío",
               "recordar", "olvidar", "alarma", "cancelar", "mañana"};
  } else if (language == "th") {
    targets = {"อากาศ", "พยากรณ์", "อุณหภูมิ", "ฝน", "ร้อน", "หนาว",
               "เตือน", "ลืม", "เตือน", "ยกเลิก", "พรุ่ง"};
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "no default seed dictionary for language '" + language + "'");
  }
  SeedDictionary pairs;
  for (size_t i = 0; i < kEnglish.size(); ++i) pairs.emplace_back(kEnglish[i], targets[i]);
  return pairs;
}

}  // namespace xfer::embed_align
