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
#ifndef XFER_COMMON_RANDOM_H_
#define XFER_COMMON_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace xfer {

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the distributions below are implemented here
// instead of using <random>'s, whose algorithms vary between standard
// libraries. Every augmenter, sampler, and initializer draws from this class
// so results are a function of (input, seed) on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  // Standard normal via Box-Muller (no cached second value).
  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    Shuffle(std::span<T>(items));
  }

  // k distinct indices from [0, n) in ascending order.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent child seeds, e.g. one per sample
// or per worker: DeriveSeed(seed, sample_index).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Value of the XFER_SEED environment variable when set and numeric.
std::optional<uint64_t> SeedFromEnvironment();

// XFER_SEED if present, otherwise `fallback`.
uint64_t ResolveSeed(uint64_t fallback);

}  // namespace xfer

#endif  // XFER_COMMON_RANDOM_H_
