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
#include "xfer/encoders/transformer.h"

#include "xfer/common/error.h"
#include "xfer/nn/ops.h"

namespace xfer::encoders {

void OrtConfig::Validate() const {
  Require(layers >= 0, ErrorCode::kInvalidArgument, "layers must be >= 0");
  Require(heads >= 1, ErrorCode::kInvalidArgument, "heads must be >= 1");
  Require(hidden_dim >= 1 && hidden_dim % heads == 0, ErrorCode::kInvalidArgument,
          "hidden_dim " + std::to_string(hidden_dim) + " must be a positive multiple of heads " +
              std::to_string(heads));
  Require(filter_dim >= 1, ErrorCode::kInvalidArgument, "filter_dim must be >= 1");
  Require(conv_kernel >= 1, ErrorCode::kInvalidArgument, "conv_kernel must be >= 1");
  Require(max_length >= 1, ErrorCode::kInvalidArgument, "max_length must be >= 1");
}

OrtConfig OrtConfig::FromConfig(const KeyValueConfig& config, const std::string& prefix) {
  OrtConfig out;
  out.layers = static_cast<int>(config.GetInt(prefix + "layers", out.layers));
  out.heads = static_cast<int>(config.GetInt(prefix + "heads", out.heads));
  out.hidden_dim = static_cast<int>(config.GetInt(prefix + "hidden_dim", out.hidden_dim));
  out.filter_dim = static_cast<int>(config.GetInt(prefix + "filter_dim", out.filter_dim));
  out.conv_kernel = static_cast<int>(config.GetInt(prefix + "conv_kernel", out.conv_kernel));
  out.max_length = static_cast<int>(config.GetInt(prefix + "max_length", out.max_length));
  out.positional_mode = ParsePositionalMode(
      config.GetString(prefix + "positional_mode", std::string(PositionalModeName(out.positional_mode))));
  out.Validate();
  return out;
}

EncoderLayer::EncoderLayer(nn::ParamStore& store, const std::string& name,
                           const OrtConfig& config, Rng& rng)
    : attention_(store, name + ".attn", config.hidden_dim, config.heads, rng),
      attention_norm_(store, name + ".attn_norm", config.hidden_dim, rng),
      feed_forward_(store, name + ".ff", config.hidden_dim, config.filter_dim, config.conv_kernel,
                    rng),
      feed_forward_norm_(store, name + ".ff_norm", config.hidden_dim, rng) {}

nn::Var EncoderLayer::Forward(const nn::Var& x) const {
  nn::Var mid = attention_norm_.Forward(nn::Add(x, attention_.Forward(x)));
  return feed_forward_norm_.Forward(nn::Add(mid, feed_forward_.Forward(mid)));
}

TransformerEncoder::TransformerEncoder(nn::ParamStore& store, const std::string& name,
                                       const OrtConfig& config, Rng& rng,
                                       std::optional<nn::Matrix> position_table)
    : config_(config) {
  config.Validate();
  positions_ = PositionalEmbedding(store, name + ".pos", config.positional_mode,
                                   config.max_length, config.hidden_dim, rng,
                                   std::move(position_table));
  for (int l = 0; l < config.layers; ++l) {
    layers_.emplace_back(store, name + ".layer" + std::to_string(l), config, rng);
  }
}

nn::Var TransformerEncoder::Forward(const nn::Var& embedded) const {
  Require(embedded.cols() == config_.hidden_dim, ErrorCode::kShapeMismatch,
          "encoder expects dim " + std::to_string(config_.hidden_dim) + ", got " +
              std::to_string(embedded.cols()));
  nn::Var x = positions_.Apply(embedded);
  for (const EncoderLayer& layer : layers_) x = layer.Forward(x);
  return x;
}

}  // namespace xfer::encoders
