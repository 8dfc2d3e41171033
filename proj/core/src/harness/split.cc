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
#include "xfer/harness/split.h"

#include <string>

namespace xfer::harness {

SplitMode ParseSplitMode(std::string_view text) {
  if (text == "zero-shot") return SplitMode::kZeroShot;
  if (text == "few-shot") return SplitMode::kFewShot;
  throw Error(ErrorCode::kInvalidArgument, "unknown split mode '" + std::string(text) + "'");
}

std::string_view SplitModeName(SplitMode mode) {
  return mode == SplitMode::kZeroShot ? "zero-shot" : "few-shot";
}

void SplitSpec::Validate() const {
  Require(fraction >= 0.0 && fraction <= 1.0, ErrorCode::kInvalidArgument,
          "fraction must lie in [0, 1]");
  Require(!count || *count >= 0, ErrorCode::kInvalidArgument, "count must be >= 0");
  Require(upsample >= 1, ErrorCode::kInvalidArgument, "upsample factor must be >= 1");
}

int SplitSpec::TrainCount(size_t n) const {
  if (mode == SplitMode::kZeroShot) return 0;
  if (count) {
    Require(static_cast<size_t>(*count) <= n, ErrorCode::kInvalidArgument,
            "requested " + std::to_string(*count) + " samples from a dataset of " +
                std::to_string(n));
    return *count;
  }
  // The small epsilon keeps products such as 0.1 * 1000 from flooring to 99.
  return static_cast<int>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

}  // namespace xfer::harness
