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
#include "xfer/harness/datasets.h"

#include <fstream>
#include <sstream>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"
#include "xfer/parse_repr/jsonl.h"

namespace xfer::harness {

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::string Where(std::string_view origin, size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

constexpr std::string_view kIntentPrefix = "# intent =";

}  // namespace

DatasetFormat ParseDatasetFormat(std::string_view text) {
  if (text == "conll") return DatasetFormat::kConll;
  if (text == "parse-jsonl") return DatasetFormat::kParseJsonl;
  if (text == "dict-tsv") return DatasetFormat::kDictTsv;
  if (text == "corpus-lines") return DatasetFormat::kCorpusLines;
  throw Error(ErrorCode::kInvalidArgument, "unknown dataset format '" + std::string(text) + "'");
}

std::string_view DatasetFormatName(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kConll:
      return "conll";
    case DatasetFormat::kParseJsonl:
      return "parse-jsonl";
    case DatasetFormat::kDictTsv:
      return "dict-tsv";
    case DatasetFormat::kCorpusLines:
      return "corpus-lines";
  }
  return "conll";
}

std::vector<TaggedSequence> ParseConll(std::string_view text, std::string_view origin) {
  std::vector<TaggedSequence> data;
  TaggedSequence current;
  bool pending_intent = false;
  auto flush = [&] {
    if (!current.tokens.empty()) data.push_back(std::move(current));
    current = TaggedSequence{};
    pending_intent = false;
  };
  const std::vector<std::string> lines = Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string where = Where(origin, i + 1);
    const std::string_view trimmed = Trim(lines[i]);
    if (trimmed.empty()) {
      if (pending_intent && current.tokens.empty()) {
        throw Error(ErrorCode::kFormatError, where + ": intent line without a sentence");
      }
      flush();
      continue;
    }
    if (StartsWith(trimmed, kIntentPrefix)) {
      if (!current.tokens.empty() || pending_intent) {
        throw Error(ErrorCode::kFormatError, where + ": intent line inside a sentence");
      }
      current.intent = std::string(Trim(trimmed.substr(kIntentPrefix.size())));
      if (current.intent.empty()) {
        throw Error(ErrorCode::kFormatError, where + ": empty intent");
      }
      pending_intent = true;
      continue;
    }
    const std::vector<std::string> fields = Split(lines[i], '\t');
    if (fields.size() != 2 || Trim(fields[0]).empty() || Trim(fields[1]).empty()) {
      throw Error(ErrorCode::kFormatError, where + ": expected 'token<TAB>label'");
    }
    const std::string label(Trim(fields[1]));
    if (label != "O" && !(label.size() > 2 && (StartsWith(label, "B-") || StartsWith(label, "I-")))) {
      throw Error(ErrorCode::kFormatError, where + ": label '" + label + "' is not B-X, I-X or O");
    }
    current.tokens.emplace_back(Trim(fields[0]));
    current.labels.push_back(label);
  }
  if (pending_intent && current.tokens.empty()) {
    throw Error(ErrorCode::kFormatError,
                Where(origin, lines.size()) + ": intent line without a sentence");
  }
  flush();
  return data;
}

std::vector<TaggedSequence> LoadConll(const std::string& path) {
  return ParseConll(ReadFile(path), path);
}

std::string FormatConll(const std::vector<TaggedSequence>& data) {
  std::string out;
  for (size_t s = 0; s < data.size(); ++s) {
    ValidateTagged(data[s]);
    if (s > 0) out += '\n';
    if (!data[s].intent.empty()) out += std::string(kIntentPrefix) + " " + data[s].intent + "\n";
    for (size_t i = 0; i < data[s].tokens.size(); ++i) {
      out += data[s].tokens[i] + "\t" + data[s].labels[i] + "\n";
    }
  }
  return out;
}

void SaveConll(const std::vector<TaggedSequence>& data, const std::string& path) {
  const std::string text = FormatConll(data);
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  out << text;
}

std::vector<parse_repr::ParseTree> LoadParseJsonl(const std::string& path) {
  std::vector<parse_repr::ParseTree> trees;
  const std::vector<std::string> lines = Lines(ReadFile(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::string where = Where(path, i + 1);
    try {
      trees.push_back(parse_repr::TreeFromJson(lines[i], where));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kFormatError) throw;
      // Structural problems in the parse string are format errors of the file.
      throw Error(ErrorCode::kFormatError, where + ": " + e.what());
    }
  }
  return trees;
}

void SaveParseJsonl(const std::vector<parse_repr::ParseTree>& trees, const std::string& path) {
  std::vector<std::string> lines;
  for (const parse_repr::ParseTree& tree : trees) lines.push_back(parse_repr::TreeToJson(tree));
  parse_repr::WriteLines(path, lines);
}

embed_align::SeedDictionary LoadDictTsv(const std::string& path) {
  return embed_align::LoadSeedDictionary(path);
}

std::vector<std::string> LoadCorpusLines(const std::string& path) {
  std::vector<std::string> sentences;
  for (const std::string& line : Lines(ReadFile(path))) {
    const std::string_view trimmed = Trim(line);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
  }
  return sentences;
}

void SaveCorpusLines(const std::vector<std::string>& lines, const std::string& path) {
  parse_repr::WriteLines(path, lines);
}

}  // namespace xfer::harness
