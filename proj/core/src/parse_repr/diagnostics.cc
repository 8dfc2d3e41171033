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
#include "xfer/parse_repr/diagnostics.h"

#include <algorithm>

#include "xfer/common/strings.h"

namespace xfer::parse_repr {
namespace {

bool BadTokenText(const std::string& token) {
  if (token.empty() || token == "]" || token.front() == '[') return true;
  return std::any_of(token.begin(), token.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

// Labels must survive both the bracketed form and the '_' <-> '-' mapping.
bool BadLabelText(const ParseNode& node) {
  const std::string& label = node.label;
  if (label.empty()) return true;
  for (char c : label) {
    if (c == '-' || c == '[' || c == ']' || c == ' ' || c == '\t' || c == '\n') return true;
  }
  return node.is_intent() && EndsWith(label, "_NESTED");
}

class TreeValidator {
 public:
  TreeValidator(const ParseTree& tree, int max_fertility)
      : tree_(tree), max_fertility_(max_fertility), slot_depth_(tree.tokens.size(), 0) {}

  std::vector<Diagnostic> Run() {
    const int n = tree_.size();
    if (n == 0) {
      Add("EmptyUtterance", 0, "no tokens");
      return std::move(out_);
    }
    for (int t = 0; t < n; ++t) {
      if (BadTokenText(tree_.tokens[t])) Add("TokenCharset", t + 1, tree_.tokens[t]);
    }
    const ParseNode& root = tree_.root;
    if (!root.is_intent()) Add("RootKind", 0, "root must be an intent");
    if (root.span != Span{0, n - 1}) {
      Add("RootSpan", root.span.begin + 1, "root must cover every token");
    }
    Visit(root, 0);
    for (int t = 0; t < n; ++t) {
      if (slot_depth_[t] > max_fertility_) {
        Add("FertilityOverflow", t + 1,
            std::to_string(slot_depth_[t]) + " slots > " + std::to_string(max_fertility_));
      }
    }
    return std::move(out_);
  }

 private:
  void Add(std::string kind, int position, std::string detail) {
    out_.push_back({std::move(kind), position, std::move(detail)});
  }

  void Visit(const ParseNode& node, int slot_depth) {
    const int n = tree_.size();
    const Span s = node.span;
    if (BadLabelText(node)) Add("LabelCharset", s.begin + 1, node.label);
    if (s.begin < 0 || s.end >= n || s.begin > s.end) {
      Add("BadSpan", s.begin + 1, node.label);
      return;
    }
    const int depth = node.is_slot() ? slot_depth + 1 : slot_depth;
    if (node.is_slot()) {
      for (int t = s.begin; t <= s.end; ++t) slot_depth_[t] = std::max(slot_depth_[t], depth);
    }
    for (size_t i = 0; i < node.children.size(); ++i) {
      const ParseNode& child = node.children[i];
      if (node.is_slot() && child.is_slot()) {
        Add("SlotInSlot", child.span.begin + 1, child.label + " directly under slot " + node.label);
      }
      if (!s.Contains(child.span)) {
        Add("ChildOutsideParent", child.span.begin + 1, child.label + " not inside " + node.label);
      }
      if (i > 0) {
        const ParseNode& prev = node.children[i - 1];
        if (prev.span.Overlaps(child.span)) {
          Add("SiblingOverlap", std::max(prev.span.begin, child.span.begin) + 1,
              prev.label + " and " + child.label);
        } else if (child.span.begin < prev.span.begin) {
          Add("SiblingOrder", child.span.begin + 1, child.label + " precedes " + prev.label);
        }
      }
      Visit(child, depth);
    }
  }

  const ParseTree& tree_;
  int max_fertility_;
  std::vector<int> slot_depth_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::string Diagnostic::ToString() const {
  return position > 0 ? kind + "@" + std::to_string(position) : kind;
}

std::string FormatDiagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> parts;
  for (const Diagnostic& d : diagnostics) {
    parts.push_back(d.detail.empty() ? d.ToString() : d.ToString() + " (" + d.detail + ")");
  }
  return "[" + Join(parts, ", ") + "]";
}

std::vector<Diagnostic> Validate(const ParseTree& tree, int max_fertility) {
  return TreeValidator(tree, max_fertility).Run();
}

std::vector<Diagnostic> Validate(const FlatLabels& flat, size_t token_count, int max_fertility) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string kind, size_t t, std::string detail) {
    out.push_back({std::move(kind), static_cast<int>(t) + 1, std::move(detail)});
  };
  if (flat.fine.size() != token_count || flat.stacks.size() != token_count) {
    out.push_back({"LengthMismatch", 0,
                   "fine " + std::to_string(flat.fine.size()) + ", stacks " +
                       std::to_string(flat.stacks.size()) + ", tokens " +
                       std::to_string(token_count)});
    return out;
  }
  if (flat.coarse.empty() || flat.coarse.find_first_of(" \t\n") != std::string::npos) {
    out.push_back({"EmptyCoarse", 0, flat.coarse});
  }

  // Fine intents: a top-level region opens at B-X and continues through I-X
  // and any NESTED labels; a NESTED run continues only with its own I- label.
  std::string region;
  std::string nested;
  for (size_t t = 0; t < token_count; ++t) {
    auto label = ParseBioLabel(flat.fine[t], /*allow_nested=*/true);
    if (!label) {
      add("MalformedBIO", t, "bad fine label '" + flat.fine[t] + "'");
      region.clear();
      nested.clear();
      continue;
    }
    if (label->tag == BioTag::kOutside) {
      region.clear();
      nested.clear();
    } else if (!label->nested) {
      if (label->tag == BioTag::kInside && region != label->type) {
        add("MalformedBIO", t, "orphan " + flat.fine[t]);
      }
      region = label->type;
      nested.clear();
    } else if (region.empty()) {
      add("MalformedBIO", t, flat.fine[t] + " outside any intent");
      nested.clear();
    } else {
      if (label->tag == BioTag::kInside && nested != label->type) {
        add("MalformedBIO", t, "orphan " + flat.fine[t]);
      }
      nested = label->type;
    }
  }

  // Slot stacks, one BIO sequence per depth.
  for (size_t t = 0; t < token_count; ++t) {
    const auto& stack = flat.stacks[t];
    if (static_cast<int>(stack.size()) > max_fertility) {
      add("FertilityOverflow", t,
          std::to_string(stack.size()) + " labels > " + std::to_string(max_fertility));
    }
    bool parent_begins = false;
    for (size_t depth = 0; depth < stack.size(); ++depth) {
      auto label = ParseBioLabel(stack[depth], /*allow_nested=*/false);
      if (!label || label->tag == BioTag::kOutside) {
        add("MalformedBIO", t, "bad slot label '" + stack[depth] + "'");
        break;
      }
      if (label->tag == BioTag::kInside) {
        bool continues = false;
        if (t > 0 && flat.stacks[t - 1].size() > depth) {
          auto prev = ParseBioLabel(flat.stacks[t - 1][depth], false);
          continues = prev && prev->tag != BioTag::kOutside && prev->type == label->type;
        }
        if (!continues) {
          add("MalformedBIO", t, "orphan " + stack[depth] + " at depth " + std::to_string(depth + 1));
        } else if (parent_begins) {
          add("UnnestableSpans", t,
              stack[depth] + " continues across a new span at a shallower depth");
        }
      } else {
        parent_begins = true;
      }
    }
  }
  return out;
}

}  // namespace xfer::parse_repr
