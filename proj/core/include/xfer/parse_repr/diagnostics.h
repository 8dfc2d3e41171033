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
#ifndef XFER_PARSE_REPR_DIAGNOSTICS_H_
#define XFER_PARSE_REPR_DIAGNOSTICS_H_

#include <string>
#include <vector>

#include "xfer/parse_repr/flat_labels.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::parse_repr {

// One violated invariant. `kind` names it (SiblingOverlap, MalformedBIO,
// ...); `position` is the 1-based token where it was detected, 0 when it
// is not tied to a token.
struct Diagnostic {
  std::string kind;
  int position = 0;
  std::string detail;

  std::string ToString() const;  // "SiblingOverlap@2"
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string FormatDiagnostics(const std::vector<Diagnostic>& diagnostics);

// Empty iff every ParseTree invariant holds.
std::vector<Diagnostic> Validate(const ParseTree& tree, int max_fertility = 3);

// Empty iff every FlatLabels invariant holds for a sentence of
// `token_count` tokens.
std::vector<Diagnostic> Validate(const FlatLabels& flat, size_t token_count,
                                 int max_fertility = 3);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_DIAGNOSTICS_H_
