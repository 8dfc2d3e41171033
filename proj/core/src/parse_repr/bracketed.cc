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
#include "xfer/parse_repr/bracketed.h"

#include <vector>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"
#include "xfer/parse_repr/diagnostics.h"

namespace xfer::parse_repr {
namespace {

struct OpenNode {
  ParseNode node;
  int first_token = -1;
};

ParseTree ParseItems(std::string_view text) {
  const std::vector<std::string> items = SplitWhitespace(text);
  std::vector<OpenNode> stack;
  ParseTree tree;
  bool have_root = false;

  for (const std::string& item : items) {
    if (item.front() == '[') {
      NodeKind kind;
      const std::string opener = ToUpper(std::string_view(item).substr(0, 4));
      if (opener == "[IN:") {
        kind = NodeKind::kIntent;
      } else if (opener == "[SL:") {
        kind = NodeKind::kSlot;
      } else {
        throw Error(ErrorCode::kInvariantViolation, "unknown node opener '" + item + "'");
      }
      Require(!(stack.empty() && have_root), ErrorCode::kInvariantViolation,
              "more than one top-level node");
      OpenNode open;
      open.node.kind = kind;
      open.node.label = ToUpper(std::string_view(item).substr(4));
      stack.push_back(std::move(open));
    } else if (item == "]") {
      Require(!stack.empty(), ErrorCode::kUnbalancedBrackets, "unmatched ']'");
      OpenNode done = std::move(stack.back());
      stack.pop_back();
      Require(done.first_token >= 0, ErrorCode::kInvariantViolation,
              "node " + done.node.label + " covers no tokens");
      done.node.span = {done.first_token, tree.size() - 1};
      if (stack.empty()) {
        tree.root = std::move(done.node);
        have_root = true;
      } else {
        OpenNode& parent = stack.back();
        if (parent.first_token < 0) parent.first_token = done.first_token;
        parent.node.children.push_back(std::move(done.node));
      }
    } else {
      Require(!stack.empty(), ErrorCode::kInvariantViolation,
              "token '" + item + "' outside the root node");
      const int index = tree.size();
      tree.tokens.push_back(item);
      for (OpenNode& open : stack) {
        if (open.first_token < 0) open.first_token = index;
      }
    }
  }
  Require(stack.empty(), ErrorCode::kUnbalancedBrackets,
          std::to_string(stack.size()) + " unclosed node(s)");
  Require(have_root, ErrorCode::kInvariantViolation, "empty parse");
  return tree;
}

void Emit(const ParseTree& tree, const ParseNode& node, std::vector<std::string>& out) {
  out.push_back((node.is_intent() ? "[IN:" : "[SL:") + node.label);
  int t = node.span.begin;
  for (const ParseNode& child : node.children) {
    for (; t < child.span.begin; ++t) out.push_back(tree.tokens[t]);
    Emit(tree, child, out);
    t = child.span.end + 1;
  }
  for (; t <= node.span.end; ++t) out.push_back(tree.tokens[t]);
  out.emplace_back("]");
}

void CheckInvariants(const ParseTree& tree) {
  // Fertility is a codec limit, not a tree invariant; checked by EncodeFlat.
  std::vector<Diagnostic> diagnostics = Validate(tree, /*max_fertility=*/1 << 20);
  Require(diagnostics.empty(), ErrorCode::kInvariantViolation, FormatDiagnostics(diagnostics));
}

}  // namespace

ParseTree ParseBracketed(std::string_view text, std::span<const std::string> tokens) {
  ParseTree tree = ParseItems(text);
  if (tree.tokens.size() != tokens.size()) {
    throw Error(ErrorCode::kTokenMismatch, "parse has " + std::to_string(tree.tokens.size()) +
                                               " tokens, expected " +
                                               std::to_string(tokens.size()));
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    Require(tree.tokens[i] == tokens[i], ErrorCode::kTokenMismatch,
            "token " + std::to_string(i + 1) + " is '" + tree.tokens[i] + "', expected '" +
                tokens[i] + "'");
  }
  CheckInvariants(tree);
  return tree;
}

ParseTree ParseBracketed(std::string_view text) {
  ParseTree tree = ParseItems(text);
  CheckInvariants(tree);
  return tree;
}

std::string ToBracketed(const ParseTree& tree) {
  std::vector<std::string> out;
  Emit(tree, tree.root, out);
  return Join(out, " ");
}

}  // namespace xfer::parse_repr
