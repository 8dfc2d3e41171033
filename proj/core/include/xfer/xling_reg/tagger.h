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

#ifndef XFER_XLING_REG_TAGGER_H_
#define XFER_XLING_REG_TAGGER_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfer/common/kv_config.h"
#include "xfer/common/vocabulary.h"
#include "xfer/embed_align/embeddings.h"
#include "xfer/encoders/crf.h"
#include "xfer/encoders/sequence_encoder.h"
#include "xfer/harness/bio.h"
#include "xfer/xling_reg/regularizers.h"

namespace xfer::xling_reg {

// Output layer of the slot tagger.
enum class HeadKind { kCrf, kSoftmax, kLvm };
HeadKind ParseHeadKind(std::string_view text);
std::string_view HeadKindName(HeadKind kind);

struct TaggerConfig {
  encoders::SequenceEncoderConfig encoder;
  HeadKind head = HeadKind::kCrf;
  int latent_dim = 32;  // LVM heads
  NoiseConfig noise;
  bool intent_head = true;  // used when the data carries intents
  bool label_reg = true;
  int label_dim = 32;  // label-sequence encoder width (even)
  bool alvm = true;    // adversarial term on slot latents; LVM head only
  WeightSchedule schedule;
  bool delexicalize = false;

  int epochs = 5;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  bool pretrain_label_encoder = true;
  int pretrain_epochs = 1;
  uint64_t seed = 13;

  void Validate() const;
  // Keys: encoder.*, head, latent_dim, noise.variance, noise.enabled,
  // intent_head, label_reg, label_dim, alvm, alpha, beta, alpha_decay,
  // constant_epochs, delexicalize, epochs, batch_size, learning_rate,
  // clip_norm, pretrain_label_encoder, pretrain_epochs, seed.
  static TaggerConfig FromConfig(const KeyValueConfig& config);
  KeyValueConfig ToConfig() const;
};

// Loss terms of one batch. `total` is differentiable; the rest are values.
struct TaggerLosses {
  nn::Var total;
  double slot = 0.0;
  double intent = 0.0;
  double label_reg = 0.0;
  double adversary = 0.0;
  double latent = 0.0;
};

// Slot tagger (plus optional intent classifier) with the cross-lingual
// regularizers: embedding noise, LVM heads, label regularization against a
// label-sequence encoder, and adversarial latent regularization.
// Parameters: "encoder.*", "slot.*", "intent.*", "adversary.*",
// "utterance_pool.*", "label.*" (the label-sequence encoder).
class TaggerModel {
 public:
  // Builds vocabularies from `data`. With `pretrained`, every table word is
  // in the vocabulary and initializes the embeddings (its dimension then
  // replaces encoder.embedding_dim).
  static TaggerModel Build(const TaggerConfig& config, std::span<const harness::TaggedSequence> data,
                           const embed_align::EmbeddingTable* pretrained = nullptr);

  TaggerModel(TaggerModel&&) = default;
  TaggerModel& operator=(TaggerModel&&) = default;

  // L = L^S + L^I + L^lr + alpha L^fc + beta L^lvm summed over the batch.
  // Label regularization pairs consecutive batch entries (0,1), (2,3), ...
  TaggerLosses Loss(std::span<const harness::TaggedSequence> batch, const LossWeights& weights,
                    Mode mode, Rng& rng) const;

  // Mean label-regularization loss over consecutive pairs of `data` in
  // evaluation mode (0 when fewer than two sequences).
  double MeanLabelRegLoss(std::span<const harness::TaggedSequence> data) const;

  // Deterministic prediction (noise off, latent means).
  harness::TaggedSequence Predict(const std::vector<std::string>& tokens) const;

  // Directory with config.txt, words.txt, labels.txt, intents.txt, model.ckpt.
  void Save(const std::string& directory) const;
  static TaggerModel Load(const std::string& directory);

  const TaggerConfig& config() const { return config_; }
  nn::ParamStore& params() { return *store_; }
  const nn::ParamStore& params() const { return *store_; }
  const Vocabulary& words() const { return words_; }
  const Vocabulary& labels() const { return labels_; }
  const Vocabulary& intents() const { return intents_; }

 private:
  TaggerModel(const TaggerConfig& config, Vocabulary words, Vocabulary labels, Vocabulary intents,
              const nn::Matrix* pretrained);

  std::vector<int> WordIds(const std::vector<std::string>& tokens) const;
  bool has_intents() const { return config_.intent_head && intents_.size() > 0; }
  bool uses_alvm() const { return config_.alvm && config_.head == HeadKind::kLvm; }
  nn::Var LabelVector(const harness::TaggedSequence& sequence) const;

  TaggerConfig config_;
  Vocabulary words_;
  Vocabulary labels_;
  Vocabulary intents_;
  std::unique_ptr<nn::ParamStore> store_;
  encoders::SequenceEncoder encoder_;
  nn::Linear slot_linear_;  // CRF and softmax heads
  encoders::Crf crf_;
  LvmHead slot_lvm_;
  nn::Linear adversary_;
  AttentionPooling intent_pool_;
  nn::Linear intent_linear_;
  LvmHead intent_lvm_;
  AttentionPooling utterance_pool_;
  nn::Embedding label_embedding_;
  encoders::Lstm label_lstm_;
  AttentionPooling label_pool_;
};

struct TaggerTrainLog {
  std::vector<double> epoch_loss;       // mean total loss per epoch
  std::vector<LossWeights> weights;     // schedule actually applied
  std::vector<double> pretrain_label_reg;  // mean L^lr per pretraining epoch
};

// Trains task + L^lr on `source` (no adversarial terms) so the label
// encoder starts from sensible weights; returns mean L^lr per epoch.
std::vector<double> PretrainLabelEncoder(TaggerModel& model,
                                         std::span<const harness::TaggedSequence> source,
                                         int epochs, uint64_t seed);

// Full schedule: optional label-encoder pretraining, then config.epochs of
// Adam over all trainable parameters with the alpha/beta schedule.
TaggerTrainLog TrainTagger(TaggerModel& model, std::span<const harness::TaggedSequence> data);

}  // namespace xfer::xling_reg

#endif  // XFER_XLING_REG_TAGGER_H_
