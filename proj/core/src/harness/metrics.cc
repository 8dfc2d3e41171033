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
#include "xfer/harness/metrics.h"

#include <algorithm>
#include <set>

#include "xfer/common/error.h"

namespace xfer::harness {

namespace {

double Ratio(int num, int den) { return den == 0 ? 0.0 : 100.0 * num / den; }

bool HasNesting(const parse_repr::ParseTree& tree) {
  const parse_repr::FlatLabels flat = parse_repr::EncodeFlat(tree);
  const bool fine_intents = std::any_of(flat.fine.begin(), flat.fine.end(), [](const auto& label) {
    return label != parse_repr::kOutside;
  });
  const bool deep = std::any_of(flat.stacks.begin(), flat.stacks.end(),
                                [](const auto& stack) { return stack.size() > 1; });
  return fine_intents || deep;
}

}  // namespace

BioScores BioF1(std::span<const std::vector<std::string>> gold,
                std::span<const std::vector<std::string>> predicted) {
  Require(gold.size() == predicted.size(), ErrorCode::kShapeMismatch,
          "gold and predicted sequence counts differ");
  BioScores scores;
  for (size_t s = 0; s < gold.size(); ++s) {
    Require(gold[s].size() == predicted[s].size(), ErrorCode::kShapeMismatch,
            "gold and predicted lengths differ in sequence " + std::to_string(s));
    const std::vector<LabeledSpan> g = ExtractSpans(gold[s]);
    const std::vector<LabeledSpan> p = ExtractSpans(predicted[s]);
    const std::set<LabeledSpan> gold_set(g.begin(), g.end());
    scores.gold_spans += static_cast<int>(g.size());
    scores.predicted_spans += static_cast<int>(p.size());
    for (const LabeledSpan& span : p) scores.correct_spans += gold_set.count(span) ? 1 : 0;
  }
  scores.precision = Ratio(scores.correct_spans, scores.predicted_spans);
  scores.recall = Ratio(scores.correct_spans, scores.gold_spans);
  const double sum = scores.precision + scores.recall;
  scores.f1 = sum == 0.0 ? 0.0 : 2.0 * scores.precision * scores.recall / sum;
  return scores;
}

BioScores BioF1(std::span<const TaggedSequence> gold, std::span<const TaggedSequence> predicted) {
  std::vector<std::vector<std::string>> g;
  std::vector<std::vector<std::string>> p;
  for (const TaggedSequence& s : gold) g.push_back(s.labels);
  for (const TaggedSequence& s : predicted) p.push_back(s.labels);
  return BioF1(std::span<const std::vector<std::string>>(g),
               std::span<const std::vector<std::string>>(p));
}

bool ExactMatch(const parse_repr::FlatLabels& gold, const parse_repr::FlatLabels& predicted) {
  return parse_repr::FlatEquals(gold, predicted);
}

bool ExactMatch(const parse_repr::ParseTree& gold, const parse_repr::ParseTree& predicted) {
  if (gold.tokens != predicted.tokens) return false;
  return parse_repr::FlatEquals(parse_repr::EncodeFlat(gold), parse_repr::EncodeFlat(predicted));
}

double ExactMatchAccuracy(std::span<const parse_repr::ParseTree> gold,
                          std::span<const parse_repr::ParseTree> predicted) {
  Require(gold.size() == predicted.size(), ErrorCode::kShapeMismatch,
          "gold and predicted tree counts differ");
  if (gold.empty()) return 0.0;
  int hits = 0;
  for (size_t i = 0; i < gold.size(); ++i) hits += ExactMatch(gold[i], predicted[i]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

NestedSplit SplitByNesting(std::span<const parse_repr::ParseTree> trees) {
  NestedSplit split;
  for (size_t i = 0; i < trees.size(); ++i) {
    (HasNesting(trees[i]) ? split.nested : split.non_nested).push_back(i);
  }
  return split;
}

}  // namespace xfer::harness
