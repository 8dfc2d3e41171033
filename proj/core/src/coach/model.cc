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
#include "xfer/coach/model.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <set>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"
#include "xfer/nn/optim.h"

namespace xfer::coach {

using harness::LabeledSpan;
using harness::TaggedSequence;
using nn::Var;

namespace {

constexpr char kUnknownWord[] = "<unk>";

Var Accumulate(const Var& total, const Var& term) {
  return total.defined() ? nn::Add(total, term) : term;
}

std::string BoolText(bool value) { return value ? "true" : "false"; }

}  // namespace

SpanEncoderKind ParseSpanEncoderKind(std::string_view text) {
  if (text == "bilstm") return SpanEncoderKind::kBiLstm;
  if (text == "attention_sum") return SpanEncoderKind::kAttentionSum;
  if (text == "sum") return SpanEncoderKind::kSum;
  throw Error(ErrorCode::kInvalidArgument, "unknown span encoder '" + std::string(text) +
                                               "' (expected bilstm, attention_sum or sum)");
}

std::string_view SpanEncoderKindName(SpanEncoderKind kind) {
  switch (kind) {
    case SpanEncoderKind::kBiLstm:
      return "bilstm";
    case SpanEncoderKind::kAttentionSum:
      return "attention_sum";
    case SpanEncoderKind::kSum:
      return "sum";
  }
  return "bilstm";
}

CoachConfig::CoachConfig() {
  encoder.embedding_dim = 32;
  encoder.hidden_dim = 32;
}

void CoachConfig::Validate() const {
  encoder.Validate();
  Require(span_hidden >= 2 && span_hidden % 2 == 0, ErrorCode::kInvalidArgument,
          "span_hidden must be even and >= 2");
  Require(beta >= 0.0, ErrorCode::kInvalidArgument, "beta must be >= 0");
  Require(warmup_epochs >= 0 && epochs >= 0, ErrorCode::kInvalidArgument, "epochs must be >= 0");
  Require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be > 0");
}

CoachConfig CoachConfig::FromConfig(const KeyValueConfig& c) {
  CoachConfig t;
  t.encoder = encoders::SequenceEncoderConfig::FromConfig(c, "encoder.", t.encoder);
  t.span_encoder = ParseSpanEncoderKind(
      c.GetString("span_encoder", std::string(SpanEncoderKindName(t.span_encoder))));
  t.span_hidden = static_cast<int>(c.GetInt("span_hidden", t.span_hidden));
  t.template_reg = c.GetBool("template_reg", t.template_reg);
  t.beta = c.GetDouble("beta", t.beta);
  t.warmup_epochs = static_cast<int>(c.GetInt("warmup_epochs", t.warmup_epochs));
  t.epochs = static_cast<int>(c.GetInt("epochs", t.epochs));
  t.batch_size = static_cast<int>(c.GetInt("batch_size", t.batch_size));
  t.learning_rate = c.GetDouble("learning_rate", t.learning_rate);
  t.clip_norm = c.GetDouble("clip_norm", t.clip_norm);
  t.seed = static_cast<uint64_t>(c.GetInt("seed", static_cast<int64_t>(t.seed)));
  t.Validate();
  return t;
}

KeyValueConfig CoachConfig::ToConfig() const {
  KeyValueConfig c;
  encoder.WriteConfig(c, "encoder.");
  c.Set("span_encoder", std::string(SpanEncoderKindName(span_encoder)));
  c.Set("span_hidden", std::to_string(span_hidden));
  c.Set("template_reg", BoolText(template_reg));
  c.Set("beta", FormatDouble(beta));
  c.Set("warmup_epochs", std::to_string(warmup_epochs));
  c.Set("epochs", std::to_string(epochs));
  c.Set("batch_size", std::to_string(batch_size));
  c.Set("learning_rate", FormatDouble(learning_rate));
  c.Set("clip_norm", FormatDouble(clip_norm));
  c.Set("seed", std::to_string(seed));
  return c;
}

std::vector<int> CoarseLabels(std::span<const std::string> labels) {
  std::vector<int> coarse(labels.size(), kCoarseO);
  for (const LabeledSpan& span : harness::ExtractSpans(labels)) {
    coarse[span.begin] = kCoarseB;
    for (int i = span.begin + 1; i <= span.end; ++i) coarse[i] = kCoarseI;
  }
  return coarse;
}

CoachModel CoachModel::Build(const CoachConfig& config, std::span<const TaggedSequence> data,
                             const std::vector<SlotDescription>& descriptions,
                             const embed_align::EmbeddingTable* pretrained) {
  CoachConfig effective = config;
  Vocabulary words = Vocabulary::WithUnknown(kUnknownWord);
  if (pretrained != nullptr) {
    effective.encoder.embedding_dim = pretrained->dim();
    for (const std::string& word : pretrained->words()) words.Add(word);
  }
  for (const TaggedSequence& sequence : data) {
    harness::ValidateTagged(sequence);
    for (const std::string& token : sequence.tokens) words.Add(token);
  }
  for (const SlotDescription& d : descriptions) {
    for (const std::string& word : d.words) words.Add(word);
    words.Add(TemplateToken(d.type));
  }
  effective.Validate();
  if (pretrained == nullptr) return CoachModel(effective, std::move(words), descriptions, nullptr);
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
  return CoachModel(effective, std::move(words), descriptions, &table);
}

CoachModel::CoachModel(const CoachConfig& config, Vocabulary words,
                       std::vector<SlotDescription> descriptions, const nn::Matrix* pretrained)
    : config_(config), words_(std::move(words)), store_(std::make_unique<nn::ParamStore>()) {
  config_.Validate();
  SetDescriptions(std::move(descriptions));
  Rng rng(DeriveSeed(config_.seed, 0));
  nn::ParamStore& store = *store_;
  encoder_ = encoders::SequenceEncoder(store, "encoder", config_.encoder, words_.size(), rng,
                                       pretrained);
  const int hidden = encoder_.output_dim();
  const int embedding_dim = config_.encoder.embedding_dim;
  emission_ = nn::Linear(store, "coarse.linear", hidden, 3, rng);
  crf_ = encoders::Crf(store, "coarse.crf", 3);
  switch (config_.span_encoder) {
    case SpanEncoderKind::kBiLstm:
      span_lstm_ = encoders::Lstm(store, "span.lstm", hidden, config_.span_hidden / 2, true, rng);
      span_projection_ = nn::Linear(store, "span.proj", config_.span_hidden, embedding_dim, rng);
      break;
    case SpanEncoderKind::kAttentionSum:
      span_pool_ = xling_reg::AttentionPooling(store, "span.pool", hidden, rng);
      span_projection_ = nn::Linear(store, "span.proj", hidden, embedding_dim, rng);
      break;
    case SpanEncoderKind::kSum:
      span_projection_ = nn::Linear(store, "span.proj", hidden, embedding_dim, rng);
      break;
  }
  if (config_.template_reg) {
    utterance_pool_ = xling_reg::AttentionPooling(store, "utterance_pool", hidden, rng);
    template_lstm_ = encoders::Lstm(store, "template.lstm", embedding_dim, hidden / 2, true, rng);
    template_pool_ = xling_reg::AttentionPooling(store, "template.pool", 2 * (hidden / 2), rng);
  }
}

void CoachModel::SetDescriptions(std::vector<SlotDescription> descriptions) {
  Require(!descriptions.empty(), ErrorCode::kInvalidArgument, "slot inventory is empty");
  std::set<std::string> seen;
  for (const SlotDescription& d : descriptions) {
    Require(!d.words.empty(), ErrorCode::kInvalidArgument,
            "slot type '" + d.type + "' has no description words");
    Require(seen.insert(d.type).second, ErrorCode::kInvalidArgument,
            "duplicate slot type '" + d.type + "'");
  }
  descriptions_ = std::move(descriptions);
}

std::vector<std::string> CoachModel::SlotTypes() const {
  std::vector<std::string> types;
  for (const SlotDescription& d : descriptions_) types.push_back(d.type);
  return types;
}

int CoachModel::TypeIndex(const std::string& type) const {
  for (size_t t = 0; t < descriptions_.size(); ++t) {
    if (descriptions_[t].type == type) return static_cast<int>(t);
  }
  throw Error(ErrorCode::kInvalidArgument, "slot type '" + type + "' has no description");
}

Var CoachModel::DescriptionVar() const {
  std::vector<Var> rows;
  for (const SlotDescription& d : descriptions_) {
    std::vector<int> ids = words_.Ids(d.words);
    rows.push_back(nn::SumRows(encoder_.Embed(ids)));
  }
  return nn::ConcatRows(rows);
}

Var CoachModel::SpanRepresentation(const Var& hidden, const LabeledSpan& span) const {
  Var rows = nn::SliceRows(hidden, span.begin, span.end - span.begin + 1);
  switch (config_.span_encoder) {
    case SpanEncoderKind::kBiLstm:
      return span_projection_.Forward(span_lstm_.Summary(rows));
    case SpanEncoderKind::kAttentionSum:
      return span_projection_.Forward(span_pool_.Forward(rows));
    case SpanEncoderKind::kSum:
      return span_projection_.Forward(nn::SumRows(rows));
  }
  return Var();
}

Var CoachModel::TemplateRepresentation(const std::vector<std::string>& tokens) const {
  // The template encoder reads the shared embeddings but never trains them.
  Var embedded = nn::Detach(encoder_.Embed(words_.Ids(tokens)));
  return template_pool_.Forward(template_lstm_.Forward(embedded));
}

CoachLosses CoachModel::Loss(std::span<const TaggedSequence> batch, bool warmup, Rng& rng) const {
  CoachLosses losses;
  const Var descriptions = DescriptionVar();
  const Var descriptions_t = nn::Transpose(descriptions);
  const std::vector<std::string> inventory = SlotTypes();
  for (const TaggedSequence& sequence : batch) {
    harness::ValidateTagged(sequence);
    Var hidden = encoder_.Forward(words_.Ids(sequence.tokens));
    losses.crf = Accumulate(
        losses.crf, crf_.NegativeLogLikelihood(emission_.Forward(hidden), CoarseLabels(sequence.labels)));
    for (const LabeledSpan& span : harness::ExtractSpans(sequence.labels)) {
      const int target = TypeIndex(span.type);
      Var scores = nn::MatMul(SpanRepresentation(hidden, span), descriptions_t);
      losses.typing =
          Accumulate(losses.typing, nn::CrossEntropy(scores, std::span<const int>(&target, 1)));
    }
    if (!config_.template_reg) continue;
    Templates templates = MakeTemplates(sequence.tokens, sequence.labels, inventory, rng);
    if (!templates.usable) continue;
    Var utterance = utterance_pool_.Forward(hidden);
    if (warmup) utterance = nn::Detach(utterance);
    std::vector<Var> wrong;
    for (const auto& w : templates.wrong) wrong.push_back(TemplateRepresentation(w));
    TemplateLosses t = ComputeTemplateLosses(utterance, TemplateRepresentation(templates.right),
                                             wrong, config_.beta);
    losses.right = Accumulate(losses.right, t.right);
    losses.wrong = Accumulate(losses.wrong, t.wrong);
  }
  for (Var* part : {&losses.crf, &losses.typing, &losses.right, &losses.wrong}) {
    if (!part->defined()) *part = Var::Scalar(0.0);
  }
  losses.total = nn::Add(nn::Add(losses.crf, losses.typing), nn::Add(losses.right, losses.wrong));
  return losses;
}

std::vector<int> CoachModel::CoarseTag(const std::vector<std::string>& tokens) const {
  if (tokens.empty()) return {};
  return crf_.Viterbi(emission_.Forward(encoder_.Forward(words_.Ids(tokens))).value());
}

TaggedSequence CoachModel::Predict(const std::vector<std::string>& tokens) const {
  TaggedSequence out;
  out.tokens = tokens;
  out.labels.assign(tokens.size(), "O");
  if (tokens.empty()) return out;
  Var hidden = encoder_.Forward(words_.Ids(tokens));
  std::vector<int> coarse = crf_.Viterbi(emission_.Forward(hidden).value());
  // Spans: a B or an I not continuing a span opens one; I continues it.
  std::vector<LabeledSpan> spans;
  for (int i = 0; i < static_cast<int>(coarse.size()); ++i) {
    if (coarse[i] == kCoarseO) continue;
    if (coarse[i] == kCoarseI && !spans.empty() && spans.back().end == i - 1) {
      spans.back().end = i;
    } else {
      spans.push_back({i, i, ""});
    }
  }
  if (spans.empty()) return out;
  const nn::Matrix descriptions = DescriptionVar().value();
  std::vector<nn::Vector> reps;
  for (const LabeledSpan& span : spans) {
    reps.push_back(SpanRepresentation(hidden, span).value().row(0).transpose());
  }
  std::vector<int> types = TypeEntities(reps, descriptions);
  for (size_t k = 0; k < spans.size(); ++k) {
    const std::string& type = descriptions_[types[k]].type;
    out.labels[spans[k].begin] = "B-" + type;
    for (int i = spans[k].begin + 1; i <= spans[k].end; ++i) out.labels[i] = "I-" + type;
  }
  return out;
}

double CoachModel::TypingAccuracy(std::span<const TaggedSequence> data,
                                  const std::string& type) const {
  const nn::Matrix descriptions = DescriptionVar().value();
  int total = 0, correct = 0;
  for (const TaggedSequence& sequence : data) {
    std::vector<LabeledSpan> spans;
    for (const LabeledSpan& span : harness::ExtractSpans(sequence.labels)) {
      if (type.empty() || span.type == type) spans.push_back(span);
    }
    if (spans.empty()) continue;
    Var hidden = encoder_.Forward(words_.Ids(sequence.tokens));
    std::vector<nn::Vector> reps;
    for (const LabeledSpan& span : spans) {
      reps.push_back(SpanRepresentation(hidden, span).value().row(0).transpose());
    }
    std::vector<int> types = TypeEntities(reps, descriptions);
    for (size_t k = 0; k < spans.size(); ++k) {
      ++total;
      correct += descriptions_[types[k]].type == spans[k].type;
    }
  }
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(correct) / total;
}

void CoachModel::Save(const std::string& directory) const {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  config_.ToConfig().Save((dir / "config.txt").string());
  words_.Save((dir / "words.txt").string());
  SaveSlotDescriptions(descriptions_, (dir / "descriptions.tsv").string());
  store_->Save((dir / "model.ckpt").string());
}

CoachModel CoachModel::Load(const std::string& directory) {
  const std::filesystem::path dir(directory);
  CoachModel model(CoachConfig::FromConfig(KeyValueConfig::Load((dir / "config.txt").string())),
                   Vocabulary::Load((dir / "words.txt").string()),
                   LoadSlotDescriptions((dir / "descriptions.tsv").string()), nullptr);
  model.store_->Load((dir / "model.ckpt").string());
  return model;
}

CoachTrainLog TrainCoach(CoachModel& model, std::span<const TaggedSequence> data,
                         const CoachTrainOptions& options) {
  const CoachConfig& config = model.config();
  nn::Adam adam(model.params().Trainable(),
                {config.learning_rate, 0.9, 0.999, 1e-8, config.clip_norm});
  Rng rng(options.seed);
  CoachTrainLog log;
  std::vector<size_t> order(data.size());
  std::vector<TaggedSequence> batch;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    double sum = 0.0;
    int batches = 0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      batch.clear();
      for (size_t k = start; k < std::min(order.size(), start + config.batch_size); ++k) {
        batch.push_back(data[order[k]]);
      }
      adam.ZeroGrad();
      CoachLosses losses = model.Loss(batch, epoch < options.warmup_epochs, rng);
      if (losses.total.requires_grad()) {
        nn::Backward(losses.total);
        adam.Step();
      }
      sum += losses.total.item();
      ++batches;
    }
    log.epoch_loss.push_back(batches > 0 ? sum / batches : 0.0);
  }
  return log;
}

CoachTrainLog TrainCoach(CoachModel& model, std::span<const TaggedSequence> data) {
  const CoachConfig& config = model.config();
  return TrainCoach(model, data,
                    {config.epochs, config.warmup_epochs, DeriveSeed(config.seed, 1)});
}

}  // namespace xfer::coach
