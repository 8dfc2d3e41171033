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

#ifndef XFER_HARNESS_DATASETS_H_
#define XFER_HARNESS_DATASETS_H_

#include <string>
#include <string_view>
#include <vector>

#include "xfer/embed_align/embeddings.h"
#include "xfer/harness/bio.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::harness {

// Input formats. Every loader throws Error(kFormatError) whose message starts
// with "path:line:" (and ":column:" for JSON syntax errors when known), and
// kMissingResource when the file cannot be opened.
enum class DatasetFormat { kConll, kParseJsonl, kDictTsv, kCorpusLines };

// "conll" | "parse-jsonl" | "dict-tsv" | "corpus-lines".
DatasetFormat ParseDatasetFormat(std::string_view text);
std::string_view DatasetFormatName(DatasetFormat format);

// CoNLL: "token<TAB>label" per line, sentences separated by one or more blank
// lines. An optional "# intent = NAME" line before a sentence sets its
// intent. Labels must follow the B-/I-/O grammar.
std::vector<TaggedSequence> LoadConll(const std::string& path);
std::vector<TaggedSequence> ParseConll(std::string_view text, std::string_view origin);
void SaveConll(const std::vector<TaggedSequence>& data, const std::string& path);
std::string FormatConll(const std::vector<TaggedSequence>& data);

// One tree record per nonblank line, in the interchange JSONL form.
std::vector<parse_repr::ParseTree> LoadParseJsonl(const std::string& path);
void SaveParseJsonl(const std::vector<parse_repr::ParseTree>& trees, const std::string& path);

// "source<TAB>target" pairs.
embed_align::SeedDictionary LoadDictTsv(const std::string& path);

// One sentence per nonblank line, surrounding whitespace trimmed.
std::vector<std::string> LoadCorpusLines(const std::string& path);
void SaveCorpusLines(const std::vector<std::string>& lines, const std::string& path);

}  // namespace xfer::harness

#endif  // XFER_HARNESS_DATASETS_H_
