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
#include "xfer/harness/bio.h"

#include "xfer/common/error.h"

namespace xfer::harness {
namespace {

bool WellFormed(const std::string& label) {
  if (label == "O") return true;
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') && label[1] == '-';
}

}  // namespace

std::string LabelType(const std::string& label) {
  return label.size() > 2 && label[1] == '-' ? label.substr(2) : std::string();
}

std::vector<LabeledSpan> ExtractSpans(std::span<const std::string> labels) {
  std::vector<LabeledSpan> spans;
  bool open = false;
  for (size_t t = 0; t < labels.size(); ++t) {
    const std::string& label = labels[t];
    if (!WellFormed(label) || label == "O") {
      open = false;
      continue;
    }
    const std::string type = label.substr(2);
    if (label[0] == 'I' && open && spans.back().type == type) {
      spans.back().end = static_cast<int>(t);
      continue;
    }
    spans.push_back({static_cast<int>(t), static_cast<int>(t), type});
    open = true;
  }
  return spans;
}

std::vector<std::string> SpansToLabels(size_t length, std::span<const LabeledSpan> spans) {
  std::vector<std::string> labels(length, "O");
  for (const LabeledSpan& span : spans) {
    Require(span.begin >= 0 && span.end < static_cast<int>(length) && span.begin <= span.end,
            ErrorCode::kInvalidArgument, "span outside the sequence");
    for (int t = span.begin; t <= span.end; ++t) {
      labels[t] = (t == span.begin ? "B-" : "I-") + span.type;
    }
  }
  return labels;
}

bool IsStrictBio(std::span<const std::string> labels) {
  std::string open;
  for (const std::string& label : labels) {
    if (!WellFormed(label)) return false;
    if (label == "O") {
      open.clear();
      continue;
    }
    const std::string type = label.substr(2);
    if (label[0] == 'I' && open != type) return false;
    open = type;
  }
  return true;
}

void ValidateTagged(const TaggedSequence& sequence) {
  Require(sequence.tokens.size() == sequence.labels.size(), ErrorCode::kShapeMismatch,
          std::to_string(sequence.tokens.size()) + " tokens but " +
              std::to_string(sequence.labels.size()) + " labels");
  for (size_t t = 0; t < sequence.labels.size(); ++t) {
    Require(WellFormed(sequence.labels[t]), ErrorCode::kMalformedBio,
            "label '" + sequence.labels[t] + "' at token " + std::to_string(t + 1));
  }
}

}  // namespace xfer::harness
