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
#ifndef XFER_PARSE_REPR_CODEC_H_
#define XFER_PARSE_REPR_CODEC_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xfer/parse_repr/diagnostics.h"
#include "xfer/parse_repr/flat_labels.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::parse_repr {

struct CodecOptions {
  int max_fertility = 3;
  // Rewrite orphan I- labels to B- and clip overhanging nested spans instead
  // of failing. Meant for model outputs.
  bool repair = false;
};

// Lossless tree -> flat encoding. Throws Error:
//   kInvariantViolation  tree fails Validate
//   kFertilityOverflow   a token is under more than max_fertility slots
//   kNestedIntentConflict two non-root intents start at one token, or a
//                        NESTED intent contains another non-root intent
//   kUnrepresentableTree the labels would decode to a different tree
FlatLabels EncodeFlat(const ParseTree& tree, const CodecOptions& options = {});

struct DecodeResult {
  std::optional<ParseTree> tree;  // set on success
  std::vector<Diagnostic> diagnostics;  // problems found (repaired or fatal)
  int repairs = 0;

  bool ok() const { return tree.has_value(); }
};

// Flat -> tree. In strict mode any diagnostic is fatal and `tree` is empty;
// in repair mode malformed labels are fixed and counted.
DecodeResult TryDecodeFlat(const FlatLabels& flat, std::span<const std::string> tokens,
                           const CodecOptions& options = {});

// Throwing variant (kMalformedBio / kUnnestableSpans / kInvariantViolation).
ParseTree DecodeFlat(const FlatLabels& flat, std::span<const std::string> tokens,
                     const CodecOptions& options = {});

// Exact match on the decomposed targets: coarse intent, fine sequence, and
// every slot stack. Label types compare case-insensitively.
bool FlatEquals(const FlatLabels& a, const FlatLabels& b);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_CODEC_H_
