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

#ifndef XFER_HARNESS_SPLIT_H_
#define XFER_HARNESS_SPLIT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "xfer/common/error.h"
#include "xfer/common/random.h"

namespace xfer::harness {

enum class SplitMode { kZeroShot, kFewShot };

// "zero-shot" | "few-shot".
SplitMode ParseSplitMode(std::string_view text);
std::string_view SplitModeName(SplitMode mode);

struct SplitSpec {
  SplitMode mode = SplitMode::kFewShot;
  double fraction = 0.0;     // used when count is unset
  std::optional<int> count;  // explicit sample count
  uint64_t seed = 13;
  int upsample = 1;

  // Throws kInvalidArgument unless 0 <= fraction <= 1, count >= 0 and
  // upsample >= 1.
  void Validate() const;
  // Zero-shot: 0. Otherwise the explicit count, or floor(fraction * n).
  // Throws kInvalidArgument when an explicit count exceeds n.
  int TrainCount(size_t n) const;
};

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> remainder;
};

// Uniform selection without replacement, deterministic per seed. Both parts
// keep the original relative order.
template <typename T>
Split<T> FewShotSplit(const std::vector<T>& data, const SplitSpec& spec) {
  spec.Validate();
  const int take = spec.TrainCount(data.size());
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  rng.Shuffle(std::span<size_t>(order));
  std::vector<bool> chosen(data.size(), false);
  for (int i = 0; i < take; ++i) chosen[order[i]] = true;
  Split<T> split;
  for (size_t i = 0; i < data.size(); ++i) {
    (chosen[i] ? split.train : split.remainder).push_back(data[i]);
  }
  return split;
}

// Each sample repeated `factor` times, sample by sample.
template <typename T>
std::vector<T> Upsample(const std::vector<T>& data, int factor) {
  Require(factor >= 1, ErrorCode::kInvalidArgument, "upsample factor must be >= 1");
  std::vector<T> out;
  out.reserve(data.size() * static_cast<size_t>(factor));
  for (const T& item : data) out.insert(out.end(), static_cast<size_t>(factor), item);
  return out;
}

// Joint-training mix: source followed by the upsampled target subset.
template <typename T>
std::vector<T> MixForJointTraining(const std::vector<T>& source, const std::vector<T>& target,
                                   int factor) {
  std::vector<T> mix = source;
  const std::vector<T> up = Upsample(target, factor);
  mix.insert(mix.end(), up.begin(), up.end());
  return mix;
}

}  // namespace xfer::harness

#endif  // XFER_HARNESS_SPLIT_H_
