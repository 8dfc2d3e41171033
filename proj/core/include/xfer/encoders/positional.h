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

#ifndef XFER_ENCODERS_POSITIONAL_H_
#define XFER_ENCODERS_POSITIONAL_H_

#include <optional>
#include <string>
#include <string_view>

#include "xfer/nn/params.h"

namespace xfer::encoders {

enum class PositionalMode { kNone, kSinusoid, kTrainable, kFrozenPretrained };

// "none" | "sinusoid" | "trainable" | "frozen-pretrained".
PositionalMode ParsePositionalMode(std::string_view text);
std::string_view PositionalModeName(PositionalMode mode);

// PE(pos, 2i) = sin(pos / 10000^(2i/d)), PE(pos, 2i+1) = cos(same angle).
nn::Matrix SinusoidTable(int rows, int dim);

// Position table file: first line "rows dim", then `rows` lines of `dim`
// numbers. Throws kFormatError with the offending line number.
nn::Matrix LoadPositionTable(const std::string& path);
void SavePositionTable(const nn::Matrix& table, const std::string& path);

// Adds a position signal to a sequence of embeddings.
//   none              zero signal (no parameters)
//   sinusoid          fixed sinusoid table
//   trainable         learned table, randomly initialized
//   frozen-pretrained externally supplied table, stored non-trainable
class PositionalEmbedding {
 public:
  PositionalEmbedding() = default;
  PositionalEmbedding(nn::ParamStore& store, const std::string& name, PositionalMode mode,
                      int max_length, int dim, Rng& rng,
                      std::optional<nn::Matrix> pretrained = std::nullopt);

  PositionalMode mode() const { return mode_; }
  // n x dim signal for a sequence of length n.
  nn::Var Table(int n) const;
  nn::Var Apply(const nn::Var& embedded) const;

 private:
  PositionalMode mode_ = PositionalMode::kNone;
  int dim_ = 0;
  nn::Var table_;
};

// Free-function form: n x d matrix for `mode`; `pretrained` is required in
// frozen-pretrained mode (kMissingResource otherwise). Trainable mode
// returns the initial values of a fresh table drawn from `seed`.
nn::Matrix PositionalEmbed(int n, PositionalMode mode, int dim,
                           const nn::Matrix* pretrained = nullptr, uint64_t seed = 0);

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_POSITIONAL_H_
