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
#include "xfer/augment/shuffle.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::augment {
namespace {

constexpr int kExactLimit = 8;
constexpr int kMaxRejections = 10000;

bool Admissible(const std::vector<int>& perm, std::optional<int> k) {
  if (!k) return true;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (std::abs(perm[i] - static_cast<int>(i)) > *k) return false;
  }
  return true;
}

const std::vector<std::vector<int>>& CachedAdmissible(int n, std::optional<int> k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  const int key_k = k ? std::min(*k, n) : n;  // any k >= n is unbounded
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, key_k});
  if (inserted) it->second = AdmissiblePermutations(n, key_k);
  return it->second;
}

}  // namespace

std::optional<int> ParseShuffleBound(const std::string& text) {
  const std::string lower = ToLower(Trim(text));
  if (lower == "inf" || lower == "infinity" || lower == "∞") return std::nullopt;
  try {
    size_t used = 0;
    const int k = std::stoi(lower, &used);
    if (used == lower.size() && k >= 0) return k;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "shuffle bound must be a non-negative integer or 'inf'");
}

std::vector<std::vector<int>> AdmissiblePermutations(int n, std::optional<int> k) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (Admissible(perm, k)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<int> SampleBoundedPermutation(int n, std::optional<int> k, Rng& rng) {
  Require(n >= 0, ErrorCode::kInvalidArgument, "negative permutation size");
  Require(!k || *k >= 0, ErrorCode::kInvalidArgument, "negative shuffle bound");
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  if (n <= 1 || (k && *k == 0)) return identity;
  if (n <= kExactLimit) {
    const auto& all = CachedAdmissible(n, k);
    return all[rng.Below(all.size())];
  }
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<int> perm = identity;
    for (int i = n - 1; i > 0; --i) {
      const int lo = k ? std::max(0, i - *k) : 0;
      const int j = lo + static_cast<int>(rng.Below(i - lo + 1));
      std::swap(perm[i], perm[j]);
    }
    if (Admissible(perm, k)) return perm;
  }
  // Practically unreachable; the identity always satisfies the bound.
  return identity;
}

std::vector<int> ShufflePermutation(int n, std::optional<int> k,
                                    const std::vector<harness::LabeledSpan>& entities,
                                    Rng& rng) {
  // Units in token order: entity spans as blocks, other tokens alone.
  std::vector<harness::LabeledSpan> sorted = entities;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<int, int>> units;
  int t = 0;
  size_t e = 0;
  while (t < n) {
    if (e < sorted.size() && sorted[e].begin == t) {
      Require(sorted[e].end >= t && sorted[e].end < n, ErrorCode::kInvalidArgument,
              "entity span outside the utterance");
      units.emplace_back(t, sorted[e].end);
      t = sorted[e].end + 1;
      ++e;
    } else {
      Require(e >= sorted.size() || sorted[e].begin > t, ErrorCode::kInvalidArgument,
              "entity spans overlap");
      units.emplace_back(t, t);
      ++t;
    }
  }
  Require(e == sorted.size(), ErrorCode::kInvalidArgument, "entity spans overlap");
  std::vector<int> unit_order = SampleBoundedPermutation(static_cast<int>(units.size()), k, rng);
  std::vector<int> order;
  order.reserve(n);
  for (int u : unit_order) {
    for (int i = units[u].first; i <= units[u].second; ++i) order.push_back(i);
  }
  return order;
}

std::vector<std::string> ShuffleOrder(const std::vector<std::string>& tokens,
                                      const ShuffleSpec& spec) {
  Rng rng(spec.seed);
  std::vector<int> order =
      ShufflePermutation(static_cast<int>(tokens.size()), spec.k, spec.entities, rng);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (int i : order) out.push_back(tokens[i]);
  return out;
}

namespace {

harness::TaggedSequence ShuffleOnce(const harness::TaggedSequence& sequence, std::optional<int> k,
                                    uint64_t seed) {
  harness::ValidateTagged(sequence);
  Rng rng(seed);
  std::vector<int> order = ShufflePermutation(static_cast<int>(sequence.size()), k,
                                              harness::ExtractSpans(sequence.labels), rng);
  harness::TaggedSequence out;
  out.intent = sequence.intent;
  for (int i : order) {
    out.tokens.push_back(sequence.tokens[i]);
    out.labels.push_back(sequence.labels[i]);
  }
  return out;
}

}  // namespace

std::vector<harness::TaggedSequence> ShuffledCopies(const harness::TaggedSequence& sequence,
                                                    std::optional<int> k, int copies,
                                                    uint64_t seed) {
  Require(copies >= 0, ErrorCode::kInvalidArgument, "copies must be >= 0");
  std::vector<harness::TaggedSequence> out;
  for (int c = 0; c < copies; ++c) out.push_back(ShuffleOnce(sequence, k, DeriveSeed(seed, c)));
  return out;
}

std::vector<harness::TaggedSequence> MakeNoisyTestset(
    const std::vector<harness::TaggedSequence>& dataset, std::optional<int> k, uint64_t seed) {
  std::vector<harness::TaggedSequence> out;
  out.reserve(dataset.size());
  for (size_t i = 0; i < dataset.size(); ++i) {
    out.push_back(ShuffleOnce(dataset[i], k, DeriveSeed(seed, i)));
  }
  return out;
}

}  // namespace xfer::augment
