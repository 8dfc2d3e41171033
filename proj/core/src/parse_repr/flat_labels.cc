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
#include "xfer/parse_repr/flat_labels.h"

#include "xfer/common/strings.h"

namespace xfer::parse_repr {

std::string BioLabel::ToString() const {
  if (tag == BioTag::kOutside) return std::string(kOutside);
  std::string out = tag == BioTag::kBegin ? "B-" : "I-";
  out += type;
  if (nested) out += kNestedSuffix;
  return out;
}

std::optional<BioLabel> ParseBioLabel(std::string_view label, bool allow_nested) {
  if (label == kOutside) return BioLabel{};
  if (label.size() < 3 || label[1] != '-') return std::nullopt;
  BioLabel out;
  if (label[0] == 'B') {
    out.tag = BioTag::kBegin;
  } else if (label[0] == 'I') {
    out.tag = BioTag::kInside;
  } else {
    return std::nullopt;
  }
  std::string_view type = label.substr(2);
  if (allow_nested && EndsWith(type, kNestedSuffix)) {
    out.nested = true;
    type.remove_suffix(kNestedSuffix.size());
  }
  if (type.empty()) return std::nullopt;
  for (char c : type) {
    if (c == ' ' || c == '\t' || c == '\n') return std::nullopt;
  }
  out.type = std::string(type);
  return out;
}

std::string TypeToFlat(std::string_view tree_label) {
  std::string out(tree_label);
  for (char& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

std::string TypeFromFlat(std::string_view flat_type) {
  std::string out(flat_type);
  for (char& c : out) {
    if (c == '-') c = '_';
  }
  return out;
}

}  // namespace xfer::parse_repr
