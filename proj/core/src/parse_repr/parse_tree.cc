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
#include "xfer/parse_repr/parse_tree.h"

#include <algorithm>
#include <functional>

namespace xfer::parse_repr {
namespace {

void CountSlotDepth(const ParseNode& node, int depth, std::vector<int>& per_token) {
  const int here = node.is_slot() ? depth + 1 : depth;
  if (node.is_slot()) {
    for (int t = node.span.begin; t <= node.span.end; ++t) {
      per_token[t] = std::max(per_token[t], here);
    }
  }
  for (const ParseNode& child : node.children) CountSlotDepth(child, here, per_token);
}

void Dump(const ParseNode& node, std::string& out) {
  out += node.is_intent() ? "(IN:" : "(SL:";
  out += node.label + " " + std::to_string(node.span.begin) + ".." +
         std::to_string(node.span.end);
  for (const ParseNode& child : node.children) {
    out += ' ';
    Dump(child, out);
  }
  out += ')';
}

}  // namespace

int MaxSlotDepth(const ParseTree& tree) {
  if (tree.tokens.empty()) return 0;
  std::vector<int> per_token(tree.tokens.size(), 0);
  CountSlotDepth(tree.root, 0, per_token);
  return *std::max_element(per_token.begin(), per_token.end());
}

bool IsNested(const ParseTree& tree) {
  for (const ParseNode& child : tree.root.children) {
    if (child.is_intent()) return true;
  }
  return MaxSlotDepth(tree) > 1;
}

std::string DebugString(const ParseTree& tree) {
  std::string out;
  Dump(tree.root, out);
  return out;
}

}  // namespace xfer::parse_repr
