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
#include "xfer/harness/latency.h"

#include <algorithm>
#include <chrono>
#include <string>

#include "xfer/common/error.h"
#include "xfer/common/random.h"

namespace xfer::harness {

double Median(std::vector<double> values) {
  Require(!values.empty(), ErrorCode::kInvalidArgument, "median of an empty sample");
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<LatencyRow> BenchLatency(const x2parser::X2Parser& parser,
                                     const LatencyOptions& options) {
  Require(options.repeats >= 1, ErrorCode::kInvalidArgument, "repeats must be >= 1");
  Require(options.warmup >= 0, ErrorCode::kInvalidArgument, "warmup must be >= 0");
  const std::vector<std::string>& vocabulary = parser.words().tokens();
  Require(!vocabulary.empty(), ErrorCode::kInvalidArgument, "parser has no vocabulary");
  Rng rng(options.seed);
  std::vector<LatencyRow> rows;
  for (int length : options.buckets) {
    Require(length >= 1, ErrorCode::kInvalidArgument, "bucket lengths must be >= 1");
    std::vector<std::string> tokens;
    for (int i = 0; i < length; ++i) tokens.push_back(vocabulary[rng.Below(vocabulary.size())]);
    LatencyRow row;
    row.length = length;
    for (int i = 0; i < options.warmup; ++i) parser.Parse(tokens);
    std::vector<double> times;
    for (int i = 0; i < options.repeats; ++i) {
      const auto start = std::chrono::steady_clock::now();
      const x2parser::ParseResult result = parser.Parse(tokens);
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      row.encoder_passes = result.encoder_passes;
      row.decoder_passes = result.decoder_passes;
    }
    row.median_ms = Median(times);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace xfer::harness
