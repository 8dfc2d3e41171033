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

#ifndef XFER_HARNESS_BIO_H_
#define XFER_HARNESS_BIO_H_

#include <span>
#include <string>
#include <vector>

namespace xfer::harness {

// Tokens with one BIO label each ("B-LOC", "I-LOC", "O"), optionally with
// an utterance-level intent.
struct TaggedSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  std::string intent;

  size_t size() const { return tokens.size(); }
  friend bool operator==(const TaggedSequence&, const TaggedSequence&) = default;
};

// Typed entity span, inclusive 0-based token range.
struct LabeledSpan {
  int begin = 0;
  int end = 0;
  std::string type;

  friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
  friend auto operator<=>(const LabeledSpan&, const LabeledSpan&) = default;
};

// Spans of a label sequence. An I-X that does not continue an X span
// starts a new span (the usual scorer convention), so every non-O label
// belongs to exactly one span.
std::vector<LabeledSpan> ExtractSpans(std::span<const std::string> labels);

// Inverse of ExtractSpans for disjoint spans.
std::vector<std::string> SpansToLabels(size_t length, std::span<const LabeledSpan> spans);

// True when every label is O, B-T or I-T and each I-T continues a T span.
bool IsStrictBio(std::span<const std::string> labels);

// "B-LOC" -> "LOC"; "" for "O".
std::string LabelType(const std::string& label);

// Throws kShapeMismatch on unequal lengths and kMalformedBio on a label
// outside the grammar (I- continuation is not required).
void ValidateTagged(const TaggedSequence& sequence);

}  // namespace xfer::harness

#endif  // XFER_HARNESS_BIO_H_
