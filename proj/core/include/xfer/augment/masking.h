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

#ifndef XFER_AUGMENT_MASKING_H_
#define XFER_AUGMENT_MASKING_H_

#include <cstdint>
#include <string>
#include <vector>

namespace xfer::augment {

enum class MaskAction { kMask, kRandom, kKeep };

// Masked positions (ascending, 0-based) and what happens to each: replaced
// by the mask token (80%), by a random vocabulary token (10%), or kept
// (10%). Each masked position draws its action independently.
struct MaskPlan {
  std::vector<int> positions;
  std::vector<MaskAction> actions;  // parallel to positions

  size_t size() const { return positions.size(); }
  friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

inline constexpr double kDefaultMaskRate = 0.15;
inline constexpr const char* kMaskToken = "[MASK]";

// Number of positions to mask: round-half-up of rate * n, at least 1 when
// n >= 7 and rate > 0; sequences shorter than 7 tokens get none.
int MaskedCount(int n, double rate);

// Token-level plan: MaskedCount positions chosen uniformly without
// replacement, then 80/10/10 actions.
MaskPlan TokenMask(int n, double rate, uint64_t seed);

// Span-level variant: starts from TokenMask and moves every isolated masked
// position next to the nearest other masked run (left edge of that run,
// right edge when the left neighbour does not exist). Runs of length >= 2
// are untouched; the masked count is preserved. See SpanMoves.
MaskPlan SpanMask(int n, double rate, uint64_t seed);

// The move step on its own. Isolated positions are processed in ascending
// order against the current plan; the nearest run is the one with the
// smallest token distance, ties toward the lower position. A plan with a
// single masked position, or n == 1, is returned unchanged. Actions travel
// with their positions.
MaskPlan SpanMoves(const MaskPlan& plan, int n);

// Applies a plan: kMask -> kMaskToken, kRandom -> a vocabulary entry drawn
// with `seed`, kKeep -> unchanged. An empty vocabulary keeps kRandom
// tokens unchanged.
std::vector<std::string> ApplyMaskPlan(const std::vector<std::string>& tokens,
                                       const MaskPlan& plan,
                                       const std::vector<std::string>& vocabulary, uint64_t seed);

std::string MaskActionName(MaskAction action);  // "mask" | "random" | "keep"
MaskAction ParseMaskAction(const std::string& name);

// JSONL record {"tokens":[..],"positions":[..],"actions":[..]}.
std::string MaskPlanToJson(const std::vector<std::string>& tokens, const MaskPlan& plan);
MaskPlan MaskPlanFromJson(const std::string& line, std::vector<std::string>* tokens = nullptr);

}  // namespace xfer::augment

#endif  // XFER_AUGMENT_MASKING_H_
