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
#ifndef XFER_PARSE_REPR_FLAT_LABELS_H_
#define XFER_PARSE_REPR_FLAT_LABELS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xfer::parse_repr {

// Decomposed parse targets.
//   coarse: root intent type, e.g. "CREATE-REMINDER".
//   fine:   one BIO label per token for non-root intents; "-NESTED" marks an
//           intent under another non-root intent.
//   stacks: per-token slot labels, outermost first.
// Types are rendered with '-' in place of '_'.
struct FlatLabels {
  std::string coarse;
  std::vector<std::string> fine;
  std::vector<std::vector<std::string>> stacks;

  size_t size() const { return fine.size(); }
  friend bool operator==(const FlatLabels&, const FlatLabels&) = default;
};

inline constexpr std::string_view kOutside = "O";
inline constexpr std::string_view kNestedSuffix = "-NESTED";

enum class BioTag { kBegin, kInside, kOutside };

// Parsed form of one BIO label.
struct BioLabel {
  BioTag tag = BioTag::kOutside;
  std::string type;  // hyphenated rendering, without the NESTED suffix
  bool nested = false;

  std::string ToString() const;
  friend bool operator==(const BioLabel&, const BioLabel&) = default;
};

// nullopt when the string is not "O", "B-T", "I-T" (optionally "-NESTED").
std::optional<BioLabel> ParseBioLabel(std::string_view label, bool allow_nested);

// "CREATE_CALL" <-> "CREATE-CALL".
std::string TypeToFlat(std::string_view tree_label);
std::string TypeFromFlat(std::string_view flat_type);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_FLAT_LABELS_H_
