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

#ifndef XFER_HARNESS_METRICS_H_
#define XFER_HARNESS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "xfer/harness/bio.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::harness {

// Span-level scores on a 0-100 scale. A zero denominator yields 0.
struct BioScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int gold_spans = 0;
  int predicted_spans = 0;
  int correct_spans = 0;

  friend bool operator==(const BioScores&, const BioScores&) = default;
};

// Exact boundary and exact type matching. Throws kShapeMismatch on unequal
// sequence counts or lengths.
BioScores BioF1(std::span<const std::vector<std::string>> gold,
                std::span<const std::vector<std::string>> predicted);
BioScores BioF1(std::span<const TaggedSequence> gold, std::span<const TaggedSequence> predicted);

// 1 iff coarse intent, fine-intent labels and every slot stack agree
// (label types compared case-insensitively).
bool ExactMatch(const parse_repr::FlatLabels& gold, const parse_repr::FlatLabels& predicted);
bool ExactMatch(const parse_repr::ParseTree& gold, const parse_repr::ParseTree& predicted);
// Share of matching pairs in [0, 1]; 0 for empty input. Throws
// kShapeMismatch on unequal counts.
double ExactMatchAccuracy(std::span<const parse_repr::ParseTree> gold,
                          std::span<const parse_repr::ParseTree> predicted);

struct NestedSplit {
  std::vector<size_t> nested;      // indices into the input
  std::vector<size_t> non_nested;
};
// An utterance is non-nested iff its flat labels have no fine-grained intent
// and every slot stack has depth <= 1.
NestedSplit SplitByNesting(std::span<const parse_repr::ParseTree> trees);

}  // namespace xfer::harness

#endif  // XFER_HARNESS_METRICS_H_
