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

#ifndef XFER_ENCODERS_SEQUENCE_ENCODER_H_
#define XFER_ENCODERS_SEQUENCE_ENCODER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "xfer/common/kv_config.h"
#include "xfer/encoders/lstm.h"
#include "xfer/encoders/transformer.h"

namespace xfer::encoders {

// Contextual encoders the task models can be built on:
//   bilstm  bidirectional LSTM, hidden_dim/2 units per direction
//   ort     order-reduced Transformer: no positions, convolutional feed-forward
//   trs     standard Transformer: sinusoidal positions, position-wise
//           feed-forward (kernel 1)
enum class EncoderKind { kBiLstm, kOrt, kTransformer };

EncoderKind ParseEncoderKind(std::string_view text);
std::string_view EncoderKindName(EncoderKind kind);

struct SequenceEncoderConfig {
  EncoderKind kind = EncoderKind::kBiLstm;
  int embedding_dim = 64;
  int hidden_dim = 64;
  // Transformer settings; hidden_dim above overrides ort.hidden_dim, and
  // "trs" forces sinusoidal positions and kernel 1.
  OrtConfig ort;
  bool freeze_embeddings = false;

  // Transformer settings actually used for the chosen kind.
  OrtConfig EffectiveOrt() const;
  void Validate() const;
  // Keys under `prefix`: kind, embedding_dim, hidden_dim, freeze_embeddings,
  // plus the OrtConfig keys (layers, heads, filter_dim, conv_kernel, ...).
  static SequenceEncoderConfig FromConfig(const KeyValueConfig& config, const std::string& prefix,
                                          const SequenceEncoderConfig& defaults);
  static SequenceEncoderConfig FromConfig(const KeyValueConfig& config, const std::string& prefix);
  void WriteConfig(KeyValueConfig& config, const std::string& prefix) const;
};

// Token ids -> embeddings -> contextual states (n x hidden_dim). An optional
// pretrained table (vocab x embedding_dim) initializes the embeddings.
class SequenceEncoder {
 public:
  SequenceEncoder() = default;
  SequenceEncoder(nn::ParamStore& store, const std::string& name,
                  const SequenceEncoderConfig& config, int vocab_size, Rng& rng,
                  const nn::Matrix* pretrained = nullptr);

  nn::Var Embed(std::span<const int> ids) const { return embedding_.Forward(ids); }
  // Contextualizes an already embedded (and possibly perturbed) sequence.
  nn::Var Encode(const nn::Var& embedded) const;
  nn::Var Forward(std::span<const int> ids) const { return Encode(Embed(ids)); }

  int output_dim() const { return config_.hidden_dim; }
  const SequenceEncoderConfig& config() const { return config_; }
  const nn::Embedding& embedding() const { return embedding_; }

 private:
  SequenceEncoderConfig config_;
  nn::Embedding embedding_;
  Lstm lstm_;
  nn::Linear projection_;  // embedding_dim -> hidden_dim for Transformers
  TransformerEncoder transformer_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_SEQUENCE_ENCODER_H_
