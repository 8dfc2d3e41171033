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
#ifndef XFER_PARSE_REPR_PARSE_TREE_H_
#define XFER_PARSE_REPR_PARSE_TREE_H_

#include <string>
#include <string_view>
#include <vector>

namespace xfer::parse_repr {

enum class NodeKind { kIntent, kSlot };

// Inclusive token range, 0-based.
struct Span {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin + 1; }
  bool Contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
  bool Contains(int token) const { return begin <= token && token <= end; }
  bool Overlaps(const Span& other) const { return begin <= other.end && other.begin <= end; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Intent or slot node. Labels are stored without the IN:/SL: prefix,
// upper-cased ("CREATE_CALL"). Slot children are always intents.
struct ParseNode {
  NodeKind kind = NodeKind::kIntent;
  std::string label;
  Span span;
  std::vector<ParseNode> children;  // ordered by span.begin

  bool is_intent() const { return kind == NodeKind::kIntent; }
  bool is_slot() const { return kind == NodeKind::kSlot; }
  friend bool operator==(const ParseNode&, const ParseNode&) = default;
};

struct ParseTree {
  std::vector<std::string> tokens;
  ParseNode root;

  int size() const { return static_cast<int>(tokens.size()); }
  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

// Maximum depth of slot nesting over any token.
int MaxSlotDepth(const ParseTree& tree);

// True when the tree has a non-root intent or a token covered by more than
// one slot.
bool IsNested(const ParseTree& tree);

// Human-readable single-line dump for test failure messages.
std::string DebugString(const ParseTree& tree);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_PARSE_TREE_H_
