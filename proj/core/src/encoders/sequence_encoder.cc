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
#include "xfer/encoders/sequence_encoder.h"

#include "xfer/common/error.h"

namespace xfer::encoders {

EncoderKind ParseEncoderKind(std::string_view text) {
  if (text == "bilstm") return EncoderKind::kBiLstm;
  if (text == "ort") return EncoderKind::kOrt;
  if (text == "trs") return EncoderKind::kTransformer;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown encoder '" + std::string(text) + "' (expected bilstm, ort or trs)");
}

std::string_view EncoderKindName(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::kBiLstm:
      return "bilstm";
    case EncoderKind::kOrt:
      return "ort";
    case EncoderKind::kTransformer:
      return "trs";
  }
  return "bilstm";
}

OrtConfig SequenceEncoderConfig::EffectiveOrt() const {
  OrtConfig effective = ort;
  effective.hidden_dim = hidden_dim;
  if (kind == EncoderKind::kTransformer) {
    effective.positional_mode = PositionalMode::kSinusoid;
    effective.conv_kernel = 1;
  }
  return effective;
}

void SequenceEncoderConfig::Validate() const {
  Require(embedding_dim >= 1 && hidden_dim >= 1, ErrorCode::kInvalidArgument,
          "encoder dimensions must be positive");
  if (kind == EncoderKind::kBiLstm) {
    Require(hidden_dim % 2 == 0, ErrorCode::kInvalidArgument,
            "bilstm hidden_dim must be even (split across directions)");
  } else {
    EffectiveOrt().Validate();
  }
}

SequenceEncoderConfig SequenceEncoderConfig::FromConfig(const KeyValueConfig& config,
                                                        const std::string& prefix,
                                                        const SequenceEncoderConfig& defaults) {
  SequenceEncoderConfig result = defaults;
  result.kind = ParseEncoderKind(
      config.GetString(prefix + "kind", std::string(EncoderKindName(defaults.kind))));
  result.embedding_dim = static_cast<int>(config.GetInt(prefix + "embedding_dim", defaults.embedding_dim));
  result.hidden_dim = static_cast<int>(config.GetInt(prefix + "hidden_dim", defaults.hidden_dim));
  result.freeze_embeddings = config.GetBool(prefix + "freeze_embeddings", defaults.freeze_embeddings);
  OrtConfig& ort = result.ort;
  ort.layers = static_cast<int>(config.GetInt(prefix + "layers", ort.layers));
  ort.heads = static_cast<int>(config.GetInt(prefix + "heads", ort.heads));
  ort.filter_dim = static_cast<int>(config.GetInt(prefix + "filter_dim", ort.filter_dim));
  ort.conv_kernel = static_cast<int>(config.GetInt(prefix + "conv_kernel", ort.conv_kernel));
  ort.max_length = static_cast<int>(config.GetInt(prefix + "max_length", ort.max_length));
  ort.positional_mode = ParsePositionalMode(config.GetString(
      prefix + "positional_mode", std::string(PositionalModeName(ort.positional_mode))));
  result.Validate();
  return result;
}

SequenceEncoderConfig SequenceEncoderConfig::FromConfig(const KeyValueConfig& config,
                                                        const std::string& prefix) {
  return FromConfig(config, prefix, SequenceEncoderConfig());
}

void SequenceEncoderConfig::WriteConfig(KeyValueConfig& config, const std::string& prefix) const {
  config.Set(prefix + "kind", std::string(EncoderKindName(kind)));
  config.Set(prefix + "embedding_dim", std::to_string(embedding_dim));
  config.Set(prefix + "hidden_dim", std::to_string(hidden_dim));
  config.Set(prefix + "freeze_embeddings", freeze_embeddings ? "true" : "false");
  config.Set(prefix + "layers", std::to_string(ort.layers));
  config.Set(prefix + "heads", std::to_string(ort.heads));
  config.Set(prefix + "filter_dim", std::to_string(ort.filter_dim));
  config.Set(prefix + "conv_kernel", std::to_string(ort.conv_kernel));
  config.Set(prefix + "positional_mode", std::string(PositionalModeName(ort.positional_mode)));
  config.Set(prefix + "max_length", std::to_string(ort.max_length));
}

SequenceEncoder::SequenceEncoder(nn::ParamStore& store, const std::string& name,
                                 const SequenceEncoderConfig& config, int vocab_size, Rng& rng,
                                 const nn::Matrix* pretrained)
    : config_(config) {
  config_.Validate();
  if (pretrained != nullptr) {
    Require(pretrained->rows() == vocab_size && pretrained->cols() == config_.embedding_dim,
            ErrorCode::kShapeMismatch, "pretrained embeddings must be vocab x embedding_dim");
    embedding_ = nn::Embedding(store, name + ".embedding", *pretrained, !config_.freeze_embeddings);
  } else {
    embedding_ = nn::Embedding(store, name + ".embedding", vocab_size, config_.embedding_dim, rng);
    if (config_.freeze_embeddings) store.Get(name + ".embedding.table").set_requires_grad(false);
  }
  if (config_.kind == EncoderKind::kBiLstm) {
    lstm_ = Lstm(store, name + ".lstm", config_.embedding_dim, config_.hidden_dim / 2,
                 /*bidirectional=*/true, rng);
  } else {
    if (config_.embedding_dim != config_.hidden_dim) {
      projection_ = nn::Linear(store, name + ".proj", config_.embedding_dim, config_.hidden_dim, rng);
    }
    transformer_ = TransformerEncoder(store, name + ".transformer", config_.EffectiveOrt(), rng);
  }
}

nn::Var SequenceEncoder::Encode(const nn::Var& embedded) const {
  if (config_.kind == EncoderKind::kBiLstm) return lstm_.Forward(embedded);
  nn::Var x = projection_.weight().defined() ? projection_.Forward(embedded) : embedded;
  return transformer_.Forward(x);
}

}  // namespace xfer::encoders
