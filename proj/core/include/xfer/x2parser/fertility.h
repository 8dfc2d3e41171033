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

#ifndef XFER_X2PARSER_FERTILITY_H_
#define XFER_X2PARSER_FERTILITY_H_

#include <span>
#include <string>
#include <vector>

#include "xfer/nn/ops.h"
#include "xfer/parse_repr/flat_labels.h"

namespace xfer::x2parser {

// Training targets derived from flat labels. Every token has fertility
// max(1, |stack|): an empty stack contributes one "O" to the flattened slot
// sequence, so fertility is never 0.
struct X2Targets {
  parse_repr::FlatLabels flat;
  std::vector<int> fertility;
  std::vector<std::string> slots;  // stacks concatenated in token order
};

X2Targets MakeTargets(const parse_repr::FlatLabels& flat);

// Flattened slot sequence for given stacks (empty stack -> "O").
std::vector<std::string> FlattenStacks(const std::vector<std::vector<std::string>>& stacks);

// Inverse of FlattenStacks given the block sizes: block i holds fertility[i]
// labels, outermost first; "O" entries are dropped from a block. Throws
// kShapeMismatch when the sizes disagree.
std::vector<std::vector<std::string>> RegroupSlots(std::span<const std::string> slots,
                                                   std::span<const int> fertility);

// H' = CopyHiddens(H, F): row i of h repeated fertility[i] times, in order.
// Throws kInvalidArgument on fertility < 1 and kShapeMismatch on |F| != n.
nn::Var CopyHiddens(const nn::Var& h, std::span<const int> fertility);

// Within-block position of each expanded row: 0, 1, .. fertility[i]-1.
std::vector<int> CopyIndices(std::span<const int> fertility);

}  // namespace xfer::x2parser

#endif  // XFER_X2PARSER_FERTILITY_H_
