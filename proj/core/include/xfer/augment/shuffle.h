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

#ifndef XFER_AUGMENT_SHUFFLE_H_
#define XFER_AUGMENT_SHUFFLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xfer/common/random.h"
#include "xfer/harness/bio.h"

namespace xfer::augment {

// Word-order shuffling bounded by displacement k over units, where a unit is
// a single token or a whole entity span (entity tokens move together and
// keep their order).
struct ShuffleSpec {
  std::optional<int> k;  // nullopt = unbounded
  int copies = 10;       // samples per source utterance
  std::vector<harness::LabeledSpan> entities;  // disjoint, inclusive
  uint64_t seed = 0;
};

// Parses "inf"/"infinity"/"∞" as unbounded, otherwise a non-negative int.
std::optional<int> ParseShuffleBound(const std::string& text);

// Uniformly random permutation sigma of {0..n-1} (sigma[new] = old) with
// |sigma[i] - i| <= k. Exact sampling by enumeration for n <= 8; above that,
// window-restricted Fisher-Yates draws with rejection of violators.
std::vector<int> SampleBoundedPermutation(int n, std::optional<int> k, Rng& rng);

// Every admissible permutation for small n (brute force, for tests and the
// exact sampler). Lexicographic order.
std::vector<std::vector<int>> AdmissiblePermutations(int n, std::optional<int> k);

// Token order after shuffling units: result[new position] = old token index.
std::vector<int> ShufflePermutation(int n, std::optional<int> k,
                                    const std::vector<harness::LabeledSpan>& entities, Rng& rng);

// One shuffled token list drawn with `spec.seed`.
std::vector<std::string> ShuffleOrder(const std::vector<std::string>& tokens,
                                      const ShuffleSpec& spec);

// `spec.copies` shuffled versions of a labeled utterance; labels follow
// their tokens. Entities come from the labels; copy c uses
// DeriveSeed(seed, c).
std::vector<harness::TaggedSequence> ShuffledCopies(const harness::TaggedSequence& sequence,
                                                    std::optional<int> k, int copies,
                                                    uint64_t seed);

// Each utterance shuffled once with bound k; utterance i uses
// DeriveSeed(seed, i). k = 0 returns the dataset unchanged.
std::vector<harness::TaggedSequence> MakeNoisyTestset(
    const std::vector<harness::TaggedSequence>& dataset, std::optional<int> k, uint64_t seed);

}  // namespace xfer::augment

#endif  // XFER_AUGMENT_SHUFFLE_H_
