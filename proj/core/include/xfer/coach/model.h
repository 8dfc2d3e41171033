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

#ifndef XFER_COACH_MODEL_H_
#define XFER_COACH_MODEL_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfer/coach/descriptions.h"
#include "xfer/coach/templates.h"
#include "xfer/common/kv_config.h"
#include "xfer/common/vocabulary.h"
#include "xfer/embed_align/embeddings.h"
#include "xfer/encoders/crf.h"
#include "xfer/encoders/sequence_encoder.h"
#include "xfer/harness/bio.h"
#include "xfer/xling_reg/regularizers.h"

namespace xfer::coach {

// How an entity span's hidden states become one vector r_k.
enum class SpanEncoderKind { kBiLstm, kAttentionSum, kSum };
SpanEncoderKind ParseSpanEncoderKind(std::string_view text);
std::string_view SpanEncoderKindName(SpanEncoderKind kind);

// Coarse tags of the first step.
inline constexpr int kCoarseO = 0;
inline constexpr int kCoarseB = 1;
inline constexpr int kCoarseI = 2;

struct CoachConfig {
  encoders::SequenceEncoderConfig encoder;
  SpanEncoderKind span_encoder = SpanEncoderKind::kBiLstm;
  int span_hidden = 32;  // BiLSTM span encoder width (even)
  bool template_reg = true;
  double beta = 1.0;
  int warmup_epochs = 2;  // template losses train only the template encoder

  int epochs = 10;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  uint64_t seed = 13;

  CoachConfig();
  void Validate() const;
  // Keys: encoder.*, span_encoder, span_hidden, template_reg, beta,
  // warmup_epochs, epochs, batch_size, learning_rate, clip_norm, seed.
  static CoachConfig FromConfig(const KeyValueConfig& config);
  KeyValueConfig ToConfig() const;
};

struct CoachLosses {
  nn::Var total;
  nn::Var crf;     // coarse BIO tagging
  nn::Var typing;  // cross-entropy of s_k = M_desc r_k on gold spans
  nn::Var right;   // template L_r
  nn::Var wrong;   // template L_w
};

// Coarse-to-fine slot filler: a 3-way BIO CRF finds entity spans, then each
// span is typed by similarity with slot-description embeddings, so new slot
// types only need a description. Parameters: "encoder.*", "coarse.*",
// "span.*", "utterance_pool.*", "template.*" (the separate template
// encoder).
class CoachModel {
 public:
  // The vocabulary covers `data`, the description words and template tokens
  // of `descriptions`, and all words of `pretrained` (whose vectors then
  // initialize the embeddings; see encoder.freeze_embeddings).
  static CoachModel Build(const CoachConfig& config, std::span<const harness::TaggedSequence> data,
                          const std::vector<SlotDescription>& descriptions,
                          const embed_align::EmbeddingTable* pretrained = nullptr);

  CoachModel(CoachModel&&) = default;
  CoachModel& operator=(CoachModel&&) = default;

  // Swaps the slot-type inventory (e.g. for a target domain); trained
  // layers are kept. Words outside the vocabulary map to the unknown entry.
  void SetDescriptions(std::vector<SlotDescription> descriptions);
  const std::vector<SlotDescription>& descriptions() const { return descriptions_; }
  std::vector<std::string> SlotTypes() const;

  // n_types x embedding_dim; differentiable when embeddings are trainable.
  nn::Var DescriptionVar() const;

  // Losses for a batch. In warm-up the template losses reach only the
  // template encoder. Every gold span type must be in the inventory.
  CoachLosses Loss(std::span<const harness::TaggedSequence> batch, bool warmup, Rng& rng) const;

  std::vector<int> CoarseTag(const std::vector<std::string>& tokens) const;
  harness::TaggedSequence Predict(const std::vector<std::string>& tokens) const;
  // Fraction of gold spans (optionally only those of `type`) typed correctly
  // when the gold boundaries are given; NaN when there is no such span.
  double TypingAccuracy(std::span<const harness::TaggedSequence> data,
                        const std::string& type = "") const;

  // Directory with config.txt, words.txt, descriptions.tsv, model.ckpt.
  void Save(const std::string& directory) const;
  static CoachModel Load(const std::string& directory);

  const CoachConfig& config() const { return config_; }
  nn::ParamStore& params() { return *store_; }
  const nn::ParamStore& params() const { return *store_; }
  const Vocabulary& words() const { return words_; }

 private:
  CoachModel(const CoachConfig& config, Vocabulary words,
             std::vector<SlotDescription> descriptions, const nn::Matrix* pretrained);

  nn::Var SpanRepresentation(const nn::Var& hidden, const harness::LabeledSpan& span) const;
  nn::Var TemplateRepresentation(const std::vector<std::string>& tokens) const;
  int TypeIndex(const std::string& type) const;

  CoachConfig config_;
  Vocabulary words_;
  std::vector<SlotDescription> descriptions_;
  std::unique_ptr<nn::ParamStore> store_;
  encoders::SequenceEncoder encoder_;
  nn::Linear emission_;
  encoders::Crf crf_;
  encoders::Lstm span_lstm_;
  xling_reg::AttentionPooling span_pool_;
  nn::Linear span_projection_;
  xling_reg::AttentionPooling utterance_pool_;
  encoders::Lstm template_lstm_;
  xling_reg::AttentionPooling template_pool_;
};

// Coarse labels for a BIO sequence, following ExtractSpans.
std::vector<int> CoarseLabels(std::span<const std::string> labels);

struct CoachTrainOptions {
  int epochs = 0;
  int warmup_epochs = 0;
  uint64_t seed = 0;
};

struct CoachTrainLog {
  std::vector<double> epoch_loss;
};

// Adam over all trainable parameters for options.epochs, the first
// options.warmup_epochs of which are template warm-up epochs.
CoachTrainLog TrainCoach(CoachModel& model, std::span<const harness::TaggedSequence> data,
                         const CoachTrainOptions& options);
// Uses the model's configured epochs, warm-up and seed.
CoachTrainLog TrainCoach(CoachModel& model, std::span<const harness::TaggedSequence> data);

}  // namespace xfer::coach

#endif  // XFER_COACH_MODEL_H_
