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

#ifndef XFER_HARNESS_LATENCY_H_
#define XFER_HARNESS_LATENCY_H_

#include <cstdint>
#include <vector>

#include "xfer/x2parser/model.h"

namespace xfer::harness {

inline const std::vector<int> kLatencyBuckets = {5, 10, 20, 40};

struct LatencyOptions {
  std::vector<int> buckets = kLatencyBuckets;
  int repeats = 30;
  int warmup = 10;
  uint64_t seed = 13;
};

struct LatencyRow {
  int length = 0;
  double median_ms = 0.0;
  int encoder_passes = 0;  // per utterance, identical across repeats
  int decoder_passes = 0;

  friend bool operator==(const LatencyRow&, const LatencyRow&) = default;
};

// Batch-1 parse latency on seeded random utterances of each bucket length,
// drawn from the parser vocabulary: `warmup` untimed parses, then the median
// of `repeats` timed ones. Runs on the calling thread only.
std::vector<LatencyRow> BenchLatency(const x2parser::X2Parser& parser,
                                     const LatencyOptions& options = {});

// Median of a nonempty sample (mean of the middle pair for even sizes).
double Median(std::vector<double> values);

}  // namespace xfer::harness

#endif  // XFER_HARNESS_LATENCY_H_
