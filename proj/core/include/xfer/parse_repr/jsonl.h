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

#ifndef XFER_PARSE_REPR_JSONL_H_
#define XFER_PARSE_REPR_JSONL_H_

#include <string>
#include <string_view>
#include <vector>

#include "xfer/parse_repr/flat_labels.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::parse_repr {

// Interchange records, one JSON object per line.
//   tree form: {"tokens":[...],"parse":"[IN:... ]"}
//   flat form: {"tokens":[...],"coarse":"...","fine":[...],"stacks":[[...],...]}
// Writers emit compact JSON with keys in the order above, so a canonical
// record survives tree -> flat -> tree byte for byte.

std::string TreeToJson(const ParseTree& tree);
// Throws Error(kFormatError) for malformed JSON or missing fields and the
// bracketed-parser errors for a bad parse string. `where` prefixes messages.
ParseTree TreeFromJson(std::string_view line, std::string_view where = "<record>");

struct FlatRecord {
  std::vector<std::string> tokens;
  FlatLabels labels;
};

std::string FlatToJson(const FlatRecord& record);
FlatRecord FlatFromJson(std::string_view line, std::string_view where = "<record>");

// Reads every nonblank line of a JSONL file.
std::vector<std::string> ReadJsonLines(const std::string& path);
void WriteLines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_JSONL_H_
