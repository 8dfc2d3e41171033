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
#include "xfer/parse_repr/codec.h"

#include <algorithm>
#include <functional>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::parse_repr {
namespace {

// ---------------------------------------------------------------- encoding

struct Encoder {
  const ParseTree& tree;
  FlatLabels flat;
  std::vector<int> fine_owner_begin;  // begin of the intent currently labeling a token

  explicit Encoder(const ParseTree& t) : tree(t) {
    const size_t n = t.tokens.size();
    flat.coarse = TypeToFlat(t.root.label);
    flat.fine.assign(n, std::string(kOutside));
    flat.stacks.assign(n, {});
    fine_owner_begin.assign(n, -1);
  }

  // `intent_ancestors` counts non-root intents above `node`.
  void Visit(const ParseNode& node, bool is_root, int intent_ancestors) {
    int below = intent_ancestors;
    if (node.is_slot()) {
      const std::string type = TypeToFlat(node.label);
      for (int t = node.span.begin; t <= node.span.end; ++t) {
        flat.stacks[t].push_back((t == node.span.begin ? "B-" : "I-") + type);
      }
    } else if (!is_root) {
      const bool nested = intent_ancestors > 0;
      const int b = node.span.begin;
      if (fine_owner_begin[b] == b) {
        throw Error(ErrorCode::kNestedIntentConflict,
                    "two intents start at token " + std::to_string(b + 1) + " ('" +
                        tree.tokens[b] + "')");
      }
      if (intent_ancestors > 1) {
        throw Error(ErrorCode::kNestedIntentConflict,
                    "intent " + node.label + " is nested under more than one non-root intent");
      }
      BioLabel label{BioTag::kBegin, TypeToFlat(node.label), nested};
      for (int t = b; t <= node.span.end; ++t) {
        label.tag = t == b ? BioTag::kBegin : BioTag::kInside;
        flat.fine[t] = label.ToString();
        fine_owner_begin[t] = b;
      }
      below = intent_ancestors + 1;
    }
    for (const ParseNode& child : node.children) Visit(child, false, below);
  }
};

// ---------------------------------------------------------------- decoding

struct Piece {
  NodeKind kind;
  std::string label;  // tree form ("CREATE_CALL")
  Span span;
  int level = -1;       // slots: stack depth
  int top = -1;         // nested intents: owning top-level intent
  bool nested = false;
  bool active = true;
  int parent_slot = -1;  // intents: slot directly above, -1 for none
  int parent = -1;       // final parent piece, -1 for the root
};

class Decoder {
 public:
  Decoder(FlatLabels flat, std::span<const std::string> tokens, const CodecOptions& options)
      : flat_(std::move(flat)), tokens_(tokens), options_(options) {}

  DecodeResult Run() {
    DecodeResult result;
    const size_t n = tokens_.size();
    auto issues = Validate(flat_, n, options_.max_fertility);
    const bool fatal_shape = std::any_of(issues.begin(), issues.end(), [](const Diagnostic& d) {
      return d.kind == "LengthMismatch" || d.kind == "EmptyCoarse";
    });
    if (n == 0 || fatal_shape || (!issues.empty() && !options_.repair)) {
      if (n == 0) issues.push_back({"EmptyUtterance", 0, "no tokens"});
      result.diagnostics = std::move(issues);
      return result;
    }
    diagnostics_ = std::move(issues);
    if (!diagnostics_.empty()) RepairLabels();

    CollectSlots();
    CollectIntents();
    ResolveCrossings();
    if (!AssignParents() || (!options_.repair && !diagnostics_.empty())) {
      result.diagnostics = std::move(diagnostics_);
      result.repairs = repairs_;
      return result;
    }
    result.tree = Build();
    result.diagnostics = std::move(diagnostics_);
    result.repairs = repairs_;
    return result;
  }

 private:
  void Note(std::string kind, int token, std::string detail) {
    diagnostics_.push_back({std::move(kind), token + 1, std::move(detail)});
  }

  // Rewrites labels so that Validate passes: orphan I- becomes B-, slot
  // continuations across a shallower boundary are clipped, overflowing
  // stacks are truncated, unparseable labels are dropped.
  void RepairLabels() {
    const size_t n = tokens_.size();
    std::string region, nested;
    for (size_t t = 0; t < n; ++t) {
      auto label = ParseBioLabel(flat_.fine[t], true);
      if (!label) {
        flat_.fine[t] = std::string(kOutside);
        ++repairs_;
        label = BioLabel{};
      }
      if (label->tag == BioTag::kOutside) {
        region.clear();
        nested.clear();
        continue;
      }
      if (label->nested && region.empty()) {
        label->nested = false;
        label->tag = BioTag::kBegin;
        ++repairs_;
      }
      if (!label->nested) {
        if (label->tag == BioTag::kInside && region != label->type) {
          label->tag = BioTag::kBegin;
          ++repairs_;
        }
        region = label->type;
        nested.clear();
      } else {
        if (label->tag == BioTag::kInside && nested != label->type) {
          label->tag = BioTag::kBegin;
          ++repairs_;
        }
        nested = label->type;
      }
      flat_.fine[t] = label->ToString();
    }

    std::vector<bool> clipped_prev;
    for (size_t t = 0; t < n; ++t) {
      auto& stack = flat_.stacks[t];
      if (static_cast<int>(stack.size()) > options_.max_fertility) {
        stack.resize(options_.max_fertility);
        ++repairs_;
      }
      std::vector<bool> clipped_here;
      bool parent_begins = false;
      for (size_t depth = 0; depth < stack.size(); ++depth) {
        auto label = ParseBioLabel(stack[depth], false);
        if (!label || label->tag == BioTag::kOutside) {
          stack.resize(depth);
          ++repairs_;
          break;
        }
        if (label->tag == BioTag::kInside) {
          bool continues = false;
          if (t > 0 && flat_.stacks[t - 1].size() > depth) {
            auto prev = ParseBioLabel(flat_.stacks[t - 1][depth], false);
            continues = prev && prev->type == label->type;
          }
          const bool was_clipped = depth < clipped_prev.size() && clipped_prev[depth];
          if (parent_begins && continues) {
            // Overhangs its parent: clip this entry and everything deeper.
            stack.resize(depth);
            clipped_here.resize(depth + 1, false);
            clipped_here[depth] = true;
            ++repairs_;
            break;
          }
          if (!continues) {
            if (was_clipped) {
              stack.resize(depth);
              clipped_here.resize(depth + 1, false);
              clipped_here[depth] = true;
              ++repairs_;
              break;
            }
            label->tag = BioTag::kBegin;
            stack[depth] = label->ToString();
            ++repairs_;
            parent_begins = true;
          }
        } else {
          parent_begins = true;
        }
      }
      clipped_prev = std::move(clipped_here);
    }
  }

  void CollectSlots() {
    const int n = static_cast<int>(tokens_.size());
    size_t max_depth = 0;
    for (const auto& stack : flat_.stacks) max_depth = std::max(max_depth, stack.size());
    for (size_t depth = 0; depth < max_depth; ++depth) {
      int open = -1;
      for (int t = 0; t < n; ++t) {
        const auto& stack = flat_.stacks[t];
        if (stack.size() <= depth) {
          open = -1;
          continue;
        }
        auto label = ParseBioLabel(stack[depth], false);
        if (label->tag == BioTag::kBegin || open < 0) {
          Piece p;
          p.kind = NodeKind::kSlot;
          p.label = TypeFromFlat(label->type);
          p.span = {t, t};
          p.level = static_cast<int>(depth);
          pieces_.push_back(std::move(p));
          open = static_cast<int>(pieces_.size()) - 1;
        } else {
          pieces_[open].span.end = t;
        }
      }
    }
  }

  void CollectIntents() {
    const int n = static_cast<int>(tokens_.size());
    int top = -1, nested = -1;
    for (int t = 0; t < n; ++t) {
      auto label = ParseBioLabel(flat_.fine[t], true);
      if (label->tag == BioTag::kOutside) {
        top = nested = -1;
        continue;
      }
      if (!label->nested) {
        if (label->tag == BioTag::kBegin) {
          Piece p;
          p.kind = NodeKind::kIntent;
          p.label = TypeFromFlat(label->type);
          p.span = {t, t};
          pieces_.push_back(std::move(p));
          top = static_cast<int>(pieces_.size()) - 1;
        } else {
          pieces_[top].span.end = t;
        }
        nested = -1;
      } else {
        if (label->tag == BioTag::kBegin) {
          Piece p;
          p.kind = NodeKind::kIntent;
          p.label = TypeFromFlat(label->type);
          p.span = {t, t};
          p.nested = true;
          p.top = top;
          pieces_.push_back(std::move(p));
          nested = static_cast<int>(pieces_.size()) - 1;
        } else {
          pieces_[nested].span.end = t;
        }
        pieces_[top].span.end = t;
      }
    }
  }

  bool Crosses(const Span& a, const Span& b) const {
    return a.Overlaps(b) && !a.Contains(b) && !b.Contains(a);
  }

  // Intents may not straddle a slot boundary. Repair clips the intent.
  void ResolveCrossings() {
    for (int pass = 0; pass < 2; ++pass) {
      // Pass 0 handles top-level intents, pass 1 the nested ones.
      for (Piece& intent : pieces_) {
        if (intent.kind != NodeKind::kIntent || !intent.active) continue;
        if (intent.nested != (pass == 1)) continue;
        if (intent.nested) {
          const Piece& top = pieces_[intent.top];
          if (!top.span.Contains(intent.span)) {
            if (!top.active || intent.span.begin > top.span.end) {
              intent.active = false;
            } else {
              intent.span.end = top.span.end;
            }
            ++repairs_;
          }
          if (!intent.active) continue;
        }
        bool changed = true;
        while (changed) {
          changed = false;
          for (const Piece& slot : pieces_) {
            if (slot.kind != NodeKind::kSlot || !slot.active) continue;
            if (!Crosses(slot.span, intent.span)) continue;
            if (!options_.repair) {
              Note("UnnestableSpans", std::max(slot.span.begin, intent.span.begin),
                   "intent " + intent.label + " crosses slot " + slot.label);
              return;
            }
            if (slot.span.begin > intent.span.begin) {
              intent.span.end = slot.span.begin - 1;
            } else {
              intent.span.end = slot.span.end;
            }
            ++repairs_;
            changed = true;
          }
        }
      }
    }
  }

  // Slots containing `span` (active, ordered by level).
  std::vector<int> SlotChain(const Span& span, int below_level) const {
    std::vector<int> chain;
    for (size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (p.kind == NodeKind::kSlot && p.active && p.level < below_level &&
          p.span.Contains(span)) {
        chain.push_back(static_cast<int>(i));
      }
    }
    std::sort(chain.begin(), chain.end(),
              [&](int a, int b) { return pieces_[a].level < pieces_[b].level; });
    return chain;
  }

  // Returns false when the labels cannot be assembled (strict mode).
  bool AssignParents() {
    for (int round = 0; round <= static_cast<int>(pieces_.size()); ++round) {
      for (Piece& p : pieces_) {
        if (p.kind != NodeKind::kIntent || !p.active) continue;
        std::vector<int> chain = SlotChain(p.span, 1 << 20);
        p.parent_slot = chain.empty() ? -1 : chain.back();
        int equal_count = 0;
        for (int s : chain) {
          if (pieces_[s].span == p.span) {
            if (equal_count == 0) p.parent_slot = s;
            ++equal_count;
          }
        }
        if (equal_count > 2 && !options_.repair) {
          Note("UnnestableSpans", p.span.begin, "intent " + p.label + " shares its span with " +
                                                   std::to_string(equal_count) + " slots");
          return false;
        }
      }
      bool dropped = false;
      for (size_t i = 0; i < pieces_.size(); ++i) {
        Piece& p = pieces_[i];
        if (!p.active) continue;
        if (p.kind == NodeKind::kIntent) {
          p.parent = IntentParent(static_cast<int>(i));
          continue;
        }
        std::vector<int> above = SlotChain(p.span, p.level);
        const int anchor = above.empty() ? -1 : above.back();
        int best = -1;
        for (size_t j = 0; j < pieces_.size(); ++j) {
          const Piece& q = pieces_[j];
          if (q.kind != NodeKind::kIntent || !q.active || q.parent_slot != anchor) continue;
          if (!q.span.Contains(p.span)) continue;
          if (best < 0 || pieces_[best].span.size() > q.span.size()) best = static_cast<int>(j);
        }
        if (best >= 0) {
          p.parent = best;
        } else if (anchor < 0) {
          p.parent = -1;
        } else if (!options_.repair) {
          Note("UnnestableSpans", p.span.begin,
               "slot " + p.label + " sits directly inside slot " + pieces_[anchor].label);
          return false;
        } else {
          p.active = false;
          ++repairs_;
          dropped = true;
        }
      }
      if (!dropped) return true;
    }
    return true;
  }

  int IntentParent(int index) const {
    const Piece& p = pieces_[index];
    int best = -1;
    for (size_t j = 0; j < pieces_.size(); ++j) {
      const Piece& q = pieces_[j];
      if (static_cast<int>(j) == index || q.kind != NodeKind::kIntent || !q.active) continue;
      if (q.parent_slot != p.parent_slot || !q.span.Contains(p.span) || q.span == p.span) continue;
      if (best < 0 || pieces_[best].span.size() > q.span.size()) best = static_cast<int>(j);
    }
    return best >= 0 ? best : p.parent_slot;
  }

  ParseTree Build() const {
    const int n = static_cast<int>(tokens_.size());
    ParseTree tree;
    tree.tokens.assign(tokens_.begin(), tokens_.end());
    std::vector<std::vector<int>> children(pieces_.size());
    std::vector<int> root_children;
    for (size_t i = 0; i < pieces_.size(); ++i) {
      if (!pieces_[i].active) continue;
      (pieces_[i].parent < 0 ? root_children : children[pieces_[i].parent])
          .push_back(static_cast<int>(i));
    }
    std::function<ParseNode(int)> make = [&](int i) {
      ParseNode node;
      node.kind = pieces_[i].kind;
      node.label = pieces_[i].label;
      node.span = pieces_[i].span;
      for (int c : children[i]) node.children.push_back(make(c));
      std::sort(node.children.begin(), node.children.end(),
                [](const ParseNode& a, const ParseNode& b) { return a.span.begin < b.span.begin; });
      return node;
    };
    tree.root.kind = NodeKind::kIntent;
    tree.root.label = TypeFromFlat(flat_.coarse);
    tree.root.span = {0, n - 1};
    for (int c : root_children) tree.root.children.push_back(make(c));
    std::sort(tree.root.children.begin(), tree.root.children.end(),
              [](const ParseNode& a, const ParseNode& b) { return a.span.begin < b.span.begin; });
    return tree;
  }

  FlatLabels flat_;
  std::span<const std::string> tokens_;
  CodecOptions options_;
  std::vector<Piece> pieces_;
  std::vector<Diagnostic> diagnostics_;
  int repairs_ = 0;
};

bool LabelEqualsIgnoreCase(const std::string& a, const std::string& b) {
  return EqualsIgnoreCase(a, b);
}

}  // namespace

FlatLabels EncodeFlat(const ParseTree& tree, const CodecOptions& options) {
  std::vector<Diagnostic> issues = Validate(tree, options.max_fertility);
  if (!issues.empty()) {
    const bool only_fertility = std::all_of(issues.begin(), issues.end(), [](const Diagnostic& d) {
      return d.kind == "FertilityOverflow";
    });
    throw Error(only_fertility ? ErrorCode::kFertilityOverflow : ErrorCode::kInvariantViolation,
                FormatDiagnostics(issues));
  }
  Encoder encoder(tree);
  encoder.Visit(tree.root, /*is_root=*/true, 0);

  CodecOptions strict = options;
  strict.repair = false;
  DecodeResult back = TryDecodeFlat(encoder.flat, tree.tokens, strict);
  if (!back.ok() || !(*back.tree == tree)) {
    throw Error(ErrorCode::kUnrepresentableTree,
                "flattened labels do not determine this tree: " + DebugString(tree) +
                    (back.ok() ? " decodes as " + DebugString(*back.tree)
                               : " " + FormatDiagnostics(back.diagnostics)));
  }
  return std::move(encoder.flat);
}

DecodeResult TryDecodeFlat(const FlatLabels& flat, std::span<const std::string> tokens,
                           const CodecOptions& options) {
  return Decoder(flat, tokens, options).Run();
}

ParseTree DecodeFlat(const FlatLabels& flat, std::span<const std::string> tokens,
                     const CodecOptions& options) {
  DecodeResult result = TryDecodeFlat(flat, tokens, options);
  if (result.ok()) return std::move(*result.tree);
  ErrorCode code = ErrorCode::kInvariantViolation;
  for (const Diagnostic& d : result.diagnostics) {
    if (d.kind == "MalformedBIO") {
      code = ErrorCode::kMalformedBio;
      break;
    }
    if (d.kind == "UnnestableSpans") code = ErrorCode::kUnnestableSpans;
  }
  throw Error(code, FormatDiagnostics(result.diagnostics));
}

bool FlatEquals(const FlatLabels& a, const FlatLabels& b) {
  if (!LabelEqualsIgnoreCase(a.coarse, b.coarse) || a.fine.size() != b.fine.size() ||
      a.stacks.size() != b.stacks.size())
    return false;
  for (size_t i = 0; i < a.fine.size(); ++i) {
    if (!LabelEqualsIgnoreCase(a.fine[i], b.fine[i])) return false;
    if (a.stacks[i].size() != b.stacks[i].size()) return false;
    for (size_t d = 0; d < a.stacks[i].size(); ++d) {
      if (!LabelEqualsIgnoreCase(a.stacks[i][d], b.stacks[i][d])) return false;
    }
  }
  return true;
}

}  // namespace xfer::parse_repr
