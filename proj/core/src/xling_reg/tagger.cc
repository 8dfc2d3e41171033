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
#include "xfer/xling_reg/tagger.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"
#include "xfer/embed_align/delex.h"
#include "xfer/nn/optim.h"

namespace xfer::xling_reg {

using harness::TaggedSequence;
using nn::Var;

namespace {

constexpr char kUnknownWord[] = "<unk>";

int ArgMax(const nn::Matrix& m, Eigen::Index row) {
  Eigen::Index best = 0;
  m.row(row).maxCoeff(&best);
  return static_cast<int>(best);
}

Var Accumulate(const Var& total, const Var& term) {
  return total.defined() ? nn::Add(total, term) : term;
}

std::string BoolText(bool value) { return value ? "true" : "false"; }

}  // namespace

HeadKind ParseHeadKind(std::string_view text) {
  if (text == "crf") return HeadKind::kCrf;
  if (text == "softmax") return HeadKind::kSoftmax;
  if (text == "lvm") return HeadKind::kLvm;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown head '" + std::string(text) + "' (expected crf, softmax or lvm)");
}

std::string_view HeadKindName(HeadKind kind) {
  switch (kind) {
    case HeadKind::kCrf:
      return "crf";
    case HeadKind::kSoftmax:
      return "softmax";
    case HeadKind::kLvm:
      return "lvm";
  }
  return "crf";
}

void TaggerConfig::Validate() const {
  encoder.Validate();
  Require(latent_dim >= 1, ErrorCode::kInvalidArgument, "latent_dim must be >= 1");
  Require(label_dim >= 2 && label_dim % 2 == 0, ErrorCode::kInvalidArgument,
          "label_dim must be even and >= 2");
  Require(noise.variance >= 0.0, ErrorCode::kInvalidArgument, "noise variance must be >= 0");
  Require(schedule.initial.alpha >= 0.0 && schedule.initial.beta >= 0.0,
          ErrorCode::kInvalidArgument, "alpha and beta must be >= 0");
  Require(epochs >= 0 && pretrain_epochs >= 0, ErrorCode::kInvalidArgument,
          "epochs must be >= 0");
  Require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be > 0");
}

TaggerConfig TaggerConfig::FromConfig(const KeyValueConfig& c) {
  TaggerConfig t;
  t.encoder = encoders::SequenceEncoderConfig::FromConfig(c, "encoder.", t.encoder);
  t.head = ParseHeadKind(c.GetString("head", std::string(HeadKindName(t.head))));
  t.latent_dim = static_cast<int>(c.GetInt("latent_dim", t.latent_dim));
  t.noise.variance = c.GetDouble("noise.variance", t.noise.variance);
  t.noise.enabled = c.GetBool("noise.enabled", t.noise.enabled);
  t.intent_head = c.GetBool("intent_head", t.intent_head);
  t.label_reg = c.GetBool("label_reg", t.label_reg);
  t.label_dim = static_cast<int>(c.GetInt("label_dim", t.label_dim));
  t.alvm = c.GetBool("alvm", t.alvm);
  t.schedule.initial.alpha = c.GetDouble("alpha", t.schedule.initial.alpha);
  t.schedule.initial.beta = c.GetDouble("beta", t.schedule.initial.beta);
  t.schedule.alpha_decay = c.GetDouble("alpha_decay", t.schedule.alpha_decay);
  t.schedule.constant_epochs = static_cast<int>(c.GetInt("constant_epochs", t.schedule.constant_epochs));
  t.delexicalize = c.GetBool("delexicalize", t.delexicalize);
  t.epochs = static_cast<int>(c.GetInt("epochs", t.epochs));
  t.batch_size = static_cast<int>(c.GetInt("batch_size", t.batch_size));
  t.learning_rate = c.GetDouble("learning_rate", t.learning_rate);
  t.clip_norm = c.GetDouble("clip_norm", t.clip_norm);
  t.pretrain_label_encoder = c.GetBool("pretrain_label_encoder", t.pretrain_label_encoder);
  t.pretrain_epochs = static_cast<int>(c.GetInt("pretrain_epochs", t.pretrain_epochs));
  t.seed = static_cast<uint64_t>(c.GetInt("seed", static_cast<int64_t>(t.seed)));
  t.Validate();
  return t;
}

KeyValueConfig TaggerConfig::ToConfig() const {
  KeyValueConfig c;
  encoder.WriteConfig(c, "encoder.");
  c.Set("head", std::string(HeadKindName(head)));
  c.Set("latent_dim", std::to_string(latent_dim));
  c.Set("noise.variance", FormatDouble(noise.variance));
  c.Set("noise.enabled", BoolText(noise.enabled));
  c.Set("intent_head", BoolText(intent_head));
  c.Set("label_reg", BoolText(label_reg));
  c.Set("label_dim", std::to_string(label_dim));
  c.Set("alvm", BoolText(alvm));
  c.Set("alpha", FormatDouble(schedule.initial.alpha));
  c.Set("beta", FormatDouble(schedule.initial.beta));
  c.Set("alpha_decay", FormatDouble(schedule.alpha_decay));
  c.Set("constant_epochs", std::to_string(schedule.constant_epochs));
  c.Set("delexicalize", BoolText(delexicalize));
  c.Set("epochs", std::to_string(epochs));
  c.Set("batch_size", std::to_string(batch_size));
  c.Set("learning_rate", FormatDouble(learning_rate));
  c.Set("clip_norm", FormatDouble(clip_norm));
  c.Set("pretrain_label_encoder", BoolText(pretrain_label_encoder));
  c.Set("pretrain_epochs", std::to_string(pretrain_epochs));
  c.Set("seed", std::to_string(seed));
  return c;
}

TaggerModel TaggerModel::Build(const TaggerConfig& config, std::span<const TaggedSequence> data,
                               const embed_align::EmbeddingTable* pretrained) {
  TaggerConfig effective = config;
  Vocabulary words = Vocabulary::WithUnknown(kUnknownWord);
  if (pretrained != nullptr) {
    effective.encoder.embedding_dim = pretrained->dim();
    for (const std::string& word : pretrained->words()) words.Add(word);
  }
  Vocabulary labels;
  labels.Add("O");
  Vocabulary intents;
  for (const TaggedSequence& sequence : data) {
    harness::ValidateTagged(sequence);
    std::vector<std::string> tokens =
        config.delexicalize ? embed_align::Delexicalize(sequence.tokens) : sequence.tokens;
    for (const std::string& token : tokens) words.Add(token);
    for (const std::string& label : sequence.labels) labels.Add(label);
    if (!sequence.intent.empty()) intents.Add(sequence.intent);
  }
  effective.Validate();
  if (pretrained == nullptr) {
    return TaggerModel(effective, std::move(words), std::move(labels), std::move(intents), nullptr);
  }
  // Table words keep their vectors; the rest start small and random.
  Rng rng(DeriveSeed(effective.seed, 7));
  const double scale = 1.0 / std::sqrt(static_cast<double>(pretrained->dim()));
  nn::Matrix table(words.size(), pretrained->dim());
  for (int id = 0; id < words.size(); ++id) {
    if (auto row = pretrained->Find(words.Token(id))) {
      table.row(id) = pretrained->vectors().row(*row);
    } else {
      for (int c = 0; c < table.cols(); ++c) table(id, c) = scale * rng.Normal();
    }
  }
  return TaggerModel(effective, std::move(words), std::move(labels), std::move(intents), &table);
}

TaggerModel::TaggerModel(const TaggerConfig& config, Vocabulary words, Vocabulary labels,
                         Vocabulary intents, const nn::Matrix* pretrained)
    : config_(config),
      words_(std::move(words)),
      labels_(std::move(labels)),
      intents_(std::move(intents)),
      store_(std::make_unique<nn::ParamStore>()) {
  config_.Validate();
  Rng rng(DeriveSeed(config_.seed, 0));
  nn::ParamStore& store = *store_;
  encoder_ = encoders::SequenceEncoder(store, "encoder", config_.encoder, words_.size(), rng,
                                       pretrained);
  const int hidden = encoder_.output_dim();
  const int n_labels = labels_.size();
  if (config_.head == HeadKind::kLvm) {
    slot_lvm_ = LvmHead(store, "slot.lvm", hidden, config_.latent_dim, n_labels, rng);
    if (uses_alvm() && n_labels >= 2) {
      adversary_ = nn::Linear(store, "adversary", config_.latent_dim, n_labels, rng);
    }
  } else {
    slot_linear_ = nn::Linear(store, "slot.linear", hidden, n_labels, rng);
    if (config_.head == HeadKind::kCrf) crf_ = encoders::Crf(store, "slot.crf", n_labels);
  }
  if (has_intents()) {
    intent_pool_ = AttentionPooling(store, "intent.pool", hidden, rng);
    if (config_.head == HeadKind::kLvm) {
      intent_lvm_ = LvmHead(store, "intent.lvm", hidden, config_.latent_dim, intents_.size(), rng);
    } else {
      intent_linear_ = nn::Linear(store, "intent.linear", hidden, intents_.size(), rng);
    }
  }
  if (config_.label_reg) {
    utterance_pool_ = AttentionPooling(store, "utterance_pool", hidden, rng);
    label_embedding_ = nn::Embedding(store, "label.embedding", n_labels, config_.label_dim, rng);
    label_lstm_ = encoders::Lstm(store, "label.lstm", config_.label_dim, config_.label_dim / 2,
                                 /*bidirectional=*/true, rng);
    label_pool_ = AttentionPooling(store, "label.pool", config_.label_dim, rng);
  }
}

std::vector<int> TaggerModel::WordIds(const std::vector<std::string>& tokens) const {
  if (!config_.delexicalize) return words_.Ids(tokens);
  return words_.Ids(embed_align::Delexicalize(tokens));
}

Var TaggerModel::LabelVector(const TaggedSequence& sequence) const {
  std::vector<int> ids = labels_.Ids(sequence.labels);
  return label_pool_.Forward(label_lstm_.Forward(label_embedding_.Forward(ids)));
}

TaggerLosses TaggerModel::Loss(std::span<const TaggedSequence> batch, const LossWeights& weights,
                               Mode mode, Rng& rng) const {
  TaggerLosses losses;
  Var total;
  std::vector<Var> utterance_vectors;
  for (const TaggedSequence& sequence : batch) {
    harness::ValidateTagged(sequence);
    Require(sequence.size() >= 1, ErrorCode::kInvalidArgument, "empty training sequence");
    std::vector<int> gold = labels_.Ids(sequence.labels);
    Var embedded = InjectNoise(encoder_.Embed(WordIds(sequence.tokens)), config_.noise, mode, rng);
    Var h = encoder_.Encode(embedded);

    Var slot;
    if (config_.head == HeadKind::kLvm) {
      Var z = slot_lvm_.Sample(slot_lvm_.Encode(h), mode, rng);
      slot = nn::CrossEntropy(slot_lvm_.Logits(z), gold);
      if (adversary_.weight().defined()) {
        AlvmLosses alvm = ComputeAlvmLosses(z, adversary_, gold);
        losses.adversary += alvm.adversary.item();
        losses.latent += alvm.latent.item();
        total = Accumulate(total, nn::Scale(alvm.adversary, weights.alpha));
        total = Accumulate(total, nn::Scale(alvm.latent, weights.beta));
      }
    } else if (config_.head == HeadKind::kCrf) {
      slot = crf_.NegativeLogLikelihood(slot_linear_.Forward(h), gold);
    } else {
      slot = nn::CrossEntropy(slot_linear_.Forward(h), gold);
    }
    losses.slot += slot.item();
    total = Accumulate(total, slot);

    if (has_intents() && intents_.Contains(sequence.intent)) {
      const int target = intents_.Id(sequence.intent);
      Var pooled = intent_pool_.Forward(h);
      Var logits = config_.head == HeadKind::kLvm
                       ? intent_lvm_.Logits(intent_lvm_.Sample(intent_lvm_.Encode(pooled), mode, rng))
                       : intent_linear_.Forward(pooled);
      Var intent = nn::CrossEntropy(logits, std::span<const int>(&target, 1));
      losses.intent += intent.item();
      total = Accumulate(total, intent);
    }
    if (config_.label_reg) utterance_vectors.push_back(utterance_pool_.Forward(h));
  }
  for (size_t i = 0; i + 1 < utterance_vectors.size(); i += 2) {
    Var reg = LabelRegLoss(utterance_vectors[i], utterance_vectors[i + 1], LabelVector(batch[i]),
                           LabelVector(batch[i + 1]));
    losses.label_reg += reg.item();
    total = Accumulate(total, reg);
  }
  losses.total = total.defined() ? total : Var::Scalar(0.0);
  return losses;
}

double TaggerModel::MeanLabelRegLoss(std::span<const TaggedSequence> data) const {
  if (!config_.label_reg || data.size() < 2) return 0.0;
  double sum = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i + 1 < data.size(); i += 2) {
    Var u_a = utterance_pool_.Forward(encoder_.Forward(WordIds(data[i].tokens)));
    Var u_b = utterance_pool_.Forward(encoder_.Forward(WordIds(data[i + 1].tokens)));
    sum += LabelRegLoss(u_a, u_b, LabelVector(data[i]), LabelVector(data[i + 1])).item();
    ++pairs;
  }
  return sum / static_cast<double>(pairs);
}

TaggedSequence TaggerModel::Predict(const std::vector<std::string>& tokens) const {
  TaggedSequence out;
  out.tokens = tokens;
  if (tokens.empty()) return out;
  Var h = encoder_.Forward(WordIds(tokens));
  std::vector<int> path;
  if (config_.head == HeadKind::kCrf) {
    path = crf_.Viterbi(slot_linear_.Forward(h).value());
  } else {
    const nn::Matrix scores = config_.head == HeadKind::kLvm
                                  ? slot_lvm_.Logits(slot_lvm_.Encode(h).mean).value()
                                  : slot_linear_.Forward(h).value();
    for (Eigen::Index r = 0; r < scores.rows(); ++r) path.push_back(ArgMax(scores, r));
  }
  for (int id : path) out.labels.push_back(labels_.Token(id));
  if (has_intents()) {
    Var pooled = intent_pool_.Forward(h);
    const nn::Matrix logits = config_.head == HeadKind::kLvm
                                  ? intent_lvm_.Logits(intent_lvm_.Encode(pooled).mean).value()
                                  : intent_linear_.Forward(pooled).value();
    out.intent = intents_.Token(ArgMax(logits, 0));
  }
  return out;
}

void TaggerModel::Save(const std::string& directory) const {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  config_.ToConfig().Save((dir / "config.txt").string());
  words_.Save((dir / "words.txt").string());
  labels_.Save((dir / "labels.txt").string());
  intents_.Save((dir / "intents.txt").string());
  store_->Save((dir / "model.ckpt").string());
}

TaggerModel TaggerModel::Load(const std::string& directory) {
  const std::filesystem::path dir(directory);
  TaggerConfig config = TaggerConfig::FromConfig(KeyValueConfig::Load((dir / "config.txt").string()));
  TaggerModel model(config, Vocabulary::Load((dir / "words.txt").string()),
                    Vocabulary::Load((dir / "labels.txt").string()),
                    Vocabulary::Load((dir / "intents.txt").string()), nullptr);
  model.store_->Load((dir / "model.ckpt").string());
  return model;
}

namespace {

// One pass over `data` in a seeded order; returns the mean of `pick`
// over batches.
template <typename Pick>
double RunEpoch(const TaggerModel& model, std::span<const TaggedSequence> data,
                const LossWeights& weights, int batch_size, nn::Adam& adam, Rng& rng, Pick pick) {
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  double sum = 0.0;
  int batches = 0;
  std::vector<TaggedSequence> batch;
  for (size_t start = 0; start < order.size(); start += batch_size) {
    batch.clear();
    for (size_t k = start; k < std::min(order.size(), start + batch_size); ++k) {
      batch.push_back(data[order[k]]);
    }
    adam.ZeroGrad();
    TaggerLosses losses = model.Loss(batch, weights, Mode::kTrain, rng);
    if (losses.total.requires_grad()) {
      nn::Backward(losses.total);
      adam.Step();
    }
    sum += pick(losses);
    ++batches;
  }
  return batches > 0 ? sum / batches : 0.0;
}

}  // namespace

std::vector<double> PretrainLabelEncoder(TaggerModel& model, std::span<const TaggedSequence> source,
                                         int epochs, uint64_t seed) {
  Require(model.config().label_reg, ErrorCode::kInvalidArgument,
          "label-encoder pretraining needs label_reg enabled");
  nn::Adam adam(model.params().Trainable(),
                {model.config().learning_rate, 0.9, 0.999, 1e-8, model.config().clip_norm});
  Rng rng(seed);
  std::vector<double> history;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    history.push_back(RunEpoch(model, source, LossWeights{0.0, 0.0}, model.config().batch_size,
                               adam, rng, [](const TaggerLosses& l) { return l.label_reg; }));
  }
  return history;
}

TaggerTrainLog TrainTagger(TaggerModel& model, std::span<const TaggedSequence> data) {
  const TaggerConfig& config = model.config();
  TaggerTrainLog log;
  if (config.pretrain_label_encoder && config.label_reg && config.pretrain_epochs > 0) {
    log.pretrain_label_reg =
        PretrainLabelEncoder(model, data, config.pretrain_epochs, DeriveSeed(config.seed, 2));
  }
  nn::Adam adam(model.params().Trainable(),
                {config.learning_rate, 0.9, 0.999, 1e-8, config.clip_norm});
  Rng rng(DeriveSeed(config.seed, 1));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    LossWeights weights = ScheduledWeights(config.schedule, epoch);
    log.weights.push_back(weights);
    log.epoch_loss.push_back(RunEpoch(model, data, weights, config.batch_size, adam, rng,
                                      [](const TaggerLosses& l) { return l.total.item(); }));
  }
  return log;
}

}  // namespace xfer::xling_reg
