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

#ifndef XFER_ENCODERS_TRANSFORMER_H_
#define XFER_ENCODERS_TRANSFORMER_H_

#include <optional>
#include <string>
#include <vector>

#include "xfer/common/kv_config.h"
#include "xfer/encoders/attention.h"
#include "xfer/encoders/conv_ff.h"
#include "xfer/encoders/positional.h"

namespace xfer::encoders {

// Encoder stack hyperparameters. With positional_mode = none and
// conv_kernel > 1 this is the order-reduced encoder; sinusoid positions with
// conv_kernel = 1 give the standard Transformer encoder.
struct OrtConfig {
  int layers = 1;
  int heads = 8;
  int hidden_dim = 256;
  int filter_dim = 256;
  int conv_kernel = 3;
  PositionalMode positional_mode = PositionalMode::kNone;
  int max_length = 512;  // rows of the positional table

  // Throws kInvalidArgument unless layers >= 0, heads >= 1, hidden_dim % heads
  // == 0, filter_dim >= 1 and conv_kernel >= 1. Even kernels are accepted
  // (the kernel-size sweep includes 10) and padded asymmetrically.
  void Validate() const;

  // Reads "<prefix>layers", "<prefix>heads", ... from a config; missing keys
  // keep their defaults.
  static OrtConfig FromConfig(const KeyValueConfig& config, const std::string& prefix);
};

// Kernel sizes of the kernel-size ablation.
inline const std::vector<int> kKernelSweep = {3, 5, 10};

// One encoder layer: x' = LN(x + MHA(x)); out = LN(x' + FF(x')).
class EncoderLayer {
 public:
  EncoderLayer() = default;
  EncoderLayer(nn::ParamStore& store, const std::string& name, const OrtConfig& config, Rng& rng);
  nn::Var Forward(const nn::Var& x) const;
  const MultiHeadAttention& attention() const { return attention_; }
  const ConvFeedForward& feed_forward() const { return feed_forward_; }

 private:
  MultiHeadAttention attention_;
  nn::LayerNorm attention_norm_;
  ConvFeedForward feed_forward_;
  nn::LayerNorm feed_forward_norm_;
};

class TransformerEncoder {
 public:
  TransformerEncoder() = default;
  TransformerEncoder(nn::ParamStore& store, const std::string& name, const OrtConfig& config,
                     Rng& rng, std::optional<nn::Matrix> position_table = std::nullopt);

  // embedded: n x hidden_dim. Zero layers (and no positions) is the identity.
  nn::Var Forward(const nn::Var& embedded) const;
  const OrtConfig& config() const { return config_; }
  const std::vector<EncoderLayer>& layers() const { return layers_; }

 private:
  OrtConfig config_;
  PositionalEmbedding positions_;
  std::vector<EncoderLayer> layers_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_TRANSFORMER_H_
