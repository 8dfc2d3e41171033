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
#include "xfer/x2parser/fertility.h"

#include <algorithm>
#include <numeric>

#include "xfer/common/error.h"

namespace xfer::x2parser {

std::vector<std::string> FlattenStacks(const std::vector<std::vector<std::string>>& stacks) {
  std::vector<std::string> slots;
  for (const auto& stack : stacks) {
    if (stack.empty()) {
      slots.emplace_back(parse_repr::kOutside);
    } else {
      slots.insert(slots.end(), stack.begin(), stack.end());
    }
  }
  return slots;
}

X2Targets MakeTargets(const parse_repr::FlatLabels& flat) {
  Require(flat.stacks.size() == flat.fine.size(), ErrorCode::kShapeMismatch,
          "fine labels and slot stacks differ in length");
  X2Targets targets;
  targets.flat = flat;
  for (const auto& stack : flat.stacks) {
    targets.fertility.push_back(std::max<int>(1, static_cast<int>(stack.size())));
  }
  targets.slots = FlattenStacks(flat.stacks);
  return targets;
}

std::vector<std::vector<std::string>> RegroupSlots(std::span<const std::string> slots,
                                                   std::span<const int> fertility) {
  const int total = std::accumulate(fertility.begin(), fertility.end(), 0);
  Require(total == static_cast<int>(slots.size()), ErrorCode::kShapeMismatch,
          "slot count differs from total fertility");
  std::vector<std::vector<std::string>> stacks(fertility.size());
  size_t next = 0;
  for (size_t i = 0; i < fertility.size(); ++i) {
    for (int k = 0; k < fertility[i]; ++k, ++next) {
      if (slots[next] != parse_repr::kOutside) stacks[i].push_back(slots[next]);
    }
  }
  return stacks;
}

nn::Var CopyHiddens(const nn::Var& h, std::span<const int> fertility) {
  Require(static_cast<Eigen::Index>(fertility.size()) == h.rows(), ErrorCode::kShapeMismatch,
          "one fertility per hidden row required");
  std::vector<int> rows;
  for (size_t i = 0; i < fertility.size(); ++i) {
    Require(fertility[i] >= 1, ErrorCode::kInvalidArgument, "fertility must be >= 1");
    rows.insert(rows.end(), fertility[i], static_cast<int>(i));
  }
  return nn::GatherRows(h, rows);
}

std::vector<int> CopyIndices(std::span<const int> fertility) {
  std::vector<int> indices;
  for (int f : fertility) {
    for (int k = 0; k < f; ++k) indices.push_back(k);
  }
  return indices;
}

}  // namespace xfer::x2parser
