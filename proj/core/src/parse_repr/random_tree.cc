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
#include "xfer/parse_repr/random_tree.h"

#include <algorithm>

#include "xfer/common/error.h"

namespace xfer::parse_repr {
namespace {

struct Context {
  int depth = 0;          // depth of the node being filled
  int slot_depth = 0;     // slots above and including the node
  int outer_intents = 0;  // non-root intents above and including the node
  int outer_begin = -1;   // begin of the outermost non-root intent
  bool is_root = true;
  bool spans_parent_slot = false;  // intent whose span equals its parent slot's
};

class Generator {
 public:
  Generator(Rng& rng, const RandomTreeOptions& options) : rng_(rng), options_(options) {}

  void Fill(ParseNode& node, const Context& ctx) {
    if (ctx.depth >= options_.max_depth) return;
    int t = node.span.begin;
    while (t <= node.span.end) {
      if (!rng_.Bernoulli(options_.child_probability)) {
        ++t;
        continue;
      }
      const int room = node.span.end - t + 1;
      // Favour short spans so that siblings are common.
      const int limit = rng_.Bernoulli(0.6) ? std::min(room, 3) : room;
      const Span span{t, t + static_cast<int>(rng_.Below(limit))};
      ParseNode child;
      if (MakeChild(child, span, node, ctx)) {
        node.children.push_back(std::move(child));
        t = span.end + 1;
      } else {
        ++t;
      }
    }
  }

 private:
  bool IntentAllowed(const Span& span, const Context& ctx) const {
    if (ctx.outer_intents >= 2) return false;
    return ctx.outer_intents == 0 || span.begin != ctx.outer_begin;
  }

  bool SlotAllowed(const Span& span, const ParseNode& parent, const Context& ctx) const {
    if (ctx.slot_depth >= options_.max_fertility) return false;
    return ctx.is_root || span != parent.span || ctx.spans_parent_slot;
  }

  bool MakeChild(ParseNode& child, const Span& span, const ParseNode& parent, const Context& ctx) {
    const bool intent_ok = IntentAllowed(span, ctx);
    const bool slot_ok = parent.is_intent() && SlotAllowed(span, parent, ctx);
    Context next = ctx;
    next.depth = ctx.depth + 1;
    next.is_root = false;
    child.span = span;
    if (slot_ok && (!intent_ok || rng_.Bernoulli(0.7))) {
      child.kind = NodeKind::kSlot;
      child.label = Pick(options_.slot_labels);
      next.slot_depth = ctx.slot_depth + 1;
      next.spans_parent_slot = false;
    } else if (intent_ok) {
      child.kind = NodeKind::kIntent;
      child.label = Pick(options_.intent_labels);
      next.outer_intents = ctx.outer_intents + 1;
      if (ctx.outer_intents == 0) next.outer_begin = span.begin;
      next.spans_parent_slot = parent.is_slot() && span == parent.span;
    } else {
      return false;
    }
    Fill(child, next);
    return true;
  }

  const std::string& Pick(const std::vector<std::string>& labels) {
    return labels[rng_.Below(labels.size())];
  }

  Rng& rng_;
  const RandomTreeOptions& options_;
};

}  // namespace

ParseTree RandomTree(Rng& rng, const RandomTreeOptions& options) {
  Require(options.min_tokens >= 1 && options.max_tokens >= options.min_tokens,
          ErrorCode::kInvalidArgument, "token range must satisfy 1 <= min <= max");
  Require(!options.intent_labels.empty() && !options.slot_labels.empty(),
          ErrorCode::kInvalidArgument, "label inventories must be nonempty");
  ParseTree tree;
  const int n = options.min_tokens +
                static_cast<int>(rng.Below(options.max_tokens - options.min_tokens + 1));
  for (int i = 0; i < n; ++i) {
    tree.tokens.push_back("w" + std::to_string(rng.Below(options.vocabulary)));
  }
  tree.root.kind = NodeKind::kIntent;
  tree.root.label = options.intent_labels[rng.Below(options.intent_labels.size())];
  tree.root.span = {0, n - 1};
  Generator(rng, options).Fill(tree.root, Context{});
  return tree;
}

}  // namespace xfer::parse_repr
