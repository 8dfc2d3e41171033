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
#include "xfer/x2parser/model.h"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>

#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/common/strings.h"
#include "xfer/nn/optim.h"

namespace xfer::x2parser {

using nn::Var;

namespace {

constexpr char kUnknownWord[] = "<unk>";
constexpr char kClsToken[] = "[CLS]";

std::string BoolText(bool value) { return value ? "true" : "false"; }

int ArgmaxRow(const nn::Matrix& m, Eigen::Index row) {
  Eigen::Index best = 0;
  m.row(row).maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

X2Config::X2Config() {
  encoder.kind = encoders::EncoderKind::kTransformer;
  encoder.embedding_dim = 64;
  encoder.hidden_dim = 64;
  encoder.ort.layers = 2;
  encoder.ort.heads = 4;
  encoder.ort.filter_dim = 128;
  slot_encoder.layers = 1;
  slot_encoder.heads = 4;
  slot_encoder.hidden_dim = 400;  // width per the reference setup; toy runs use 128
  slot_encoder.filter_dim = 64;
  slot_encoder.conv_kernel = 1;
  slot_encoder.positional_mode = encoders::PositionalMode::kSinusoid;
}

void X2Config::Validate() const {
  encoder.Validate();
  slot_encoder.Validate();
  Require(max_fertility >= 1, ErrorCode::kInvalidArgument, "max_fertility must be >= 1");
  for (double w : {coarse_weight, fine_weight, fertility_weight, slot_weight}) {
    Require(w >= 0.0, ErrorCode::kInvalidArgument, "loss weights must be >= 0");
  }
  Require(steps >= 0, ErrorCode::kInvalidArgument, "steps must be >= 0");
  Require(batch_size >= 1, ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be > 0");
  Require(warmup_steps >= 0, ErrorCode::kInvalidArgument, "warmup_steps must be >= 0");
}

X2Config X2Config::FromConfig(const KeyValueConfig& c) {
  X2Config t;
  t.encoder = encoders::SequenceEncoderConfig::FromConfig(c, "encoder.", t.encoder);
  encoders::OrtConfig& s = t.slot_encoder;
  s.layers = static_cast<int>(c.GetInt("slot_encoder.layers", s.layers));
  s.heads = static_cast<int>(c.GetInt("slot_encoder.heads", s.heads));
  s.hidden_dim = static_cast<int>(c.GetInt("slot_encoder.hidden_dim", s.hidden_dim));
  s.filter_dim = static_cast<int>(c.GetInt("slot_encoder.filter_dim", s.filter_dim));
  s.conv_kernel = static_cast<int>(c.GetInt("slot_encoder.conv_kernel", s.conv_kernel));
  s.max_length = static_cast<int>(c.GetInt("slot_encoder.max_length", s.max_length));
  s.positional_mode = encoders::ParsePositionalMode(c.GetString(
      "slot_encoder.positional_mode", std::string(encoders::PositionalModeName(s.positional_mode))));
  t.max_fertility = static_cast<int>(c.GetInt("max_fertility", t.max_fertility));
  t.copy_index_embedding = c.GetBool("copy_index_embedding", t.copy_index_embedding);
  t.coarse_weight = c.GetDouble("coarse_weight", t.coarse_weight);
  t.fine_weight = c.GetDouble("fine_weight", t.fine_weight);
  t.fertility_weight = c.GetDouble("fertility_weight", t.fertility_weight);
  t.slot_weight = c.GetDouble("slot_weight", t.slot_weight);
  t.steps = static_cast<int>(c.GetInt("steps", t.steps));
  t.batch_size = static_cast<int>(c.GetInt("batch_size", t.batch_size));
  t.learning_rate = c.GetDouble("learning_rate", t.learning_rate);
  t.warmup_steps = static_cast<int>(c.GetInt("warmup_steps", t.warmup_steps));
  t.decay_to_zero = c.GetBool("decay_to_zero", t.decay_to_zero);
  t.clip_norm = c.GetDouble("clip_norm", t.clip_norm);
  t.seed = static_cast<uint64_t>(c.GetInt("seed", static_cast<int64_t>(t.seed)));
  t.Validate();
  return t;
}

KeyValueConfig X2Config::ToConfig() const {
  KeyValueConfig c;
  encoder.WriteConfig(c, "encoder.");
  c.Set("slot_encoder.layers", std::to_string(slot_encoder.layers));
  c.Set("slot_encoder.heads", std::to_string(slot_encoder.heads));
  c.Set("slot_encoder.hidden_dim", std::to_string(slot_encoder.hidden_dim));
  c.Set("slot_encoder.filter_dim", std::to_string(slot_encoder.filter_dim));
  c.Set("slot_encoder.conv_kernel", std::to_string(slot_encoder.conv_kernel));
  c.Set("slot_encoder.max_length", std::to_string(slot_encoder.max_length));
  c.Set("slot_encoder.positional_mode",
        std::string(encoders::PositionalModeName(slot_encoder.positional_mode)));
  c.Set("max_fertility", std::to_string(max_fertility));
  c.Set("copy_index_embedding", BoolText(copy_index_embedding));
  c.Set("coarse_weight", FormatDouble(coarse_weight));
  c.Set("fine_weight", FormatDouble(fine_weight));
  c.Set("fertility_weight", FormatDouble(fertility_weight));
  c.Set("slot_weight", FormatDouble(slot_weight));
  c.Set("steps", std::to_string(steps));
  c.Set("batch_size", std::to_string(batch_size));
  c.Set("learning_rate", FormatDouble(learning_rate));
  c.Set("warmup_steps", std::to_string(warmup_steps));
  c.Set("decay_to_zero", BoolText(decay_to_zero));
  c.Set("clip_norm", FormatDouble(clip_norm));
  c.Set("seed", std::to_string(seed));
  return c;
}

X2Parser X2Parser::Build(const X2Config& config, std::span<const parse_repr::ParseTree> trees) {
  config.Validate();
  Require(!trees.empty(), ErrorCode::kInvalidArgument, "at least one training tree required");
  const parse_repr::CodecOptions codec{config.max_fertility, false};
  Vocabulary words = Vocabulary::WithUnknown(kUnknownWord);
  words.Add(kClsToken);
  Vocabulary coarse;
  Vocabulary fine;
  Vocabulary slots;
  fine.Add(std::string(parse_repr::kOutside));
  slots.Add(std::string(parse_repr::kOutside));
  for (const parse_repr::ParseTree& tree : trees) {
    const parse_repr::FlatLabels flat = parse_repr::EncodeFlat(tree, codec);
    for (const std::string& token : tree.tokens) words.Add(token);
    coarse.Add(flat.coarse);
    for (const std::string& label : flat.fine) fine.Add(label);
    for (const auto& stack : flat.stacks) {
      for (const std::string& label : stack) slots.Add(label);
    }
  }
  return X2Parser(config, std::move(words), std::move(coarse), std::move(fine), std::move(slots));
}

X2Parser::X2Parser(const X2Config& config, Vocabulary words, Vocabulary coarse, Vocabulary fine,
                   Vocabulary slots)
    : config_(config),
      words_(std::move(words)),
      coarse_(std::move(coarse)),
      fine_(std::move(fine)),
      slots_(std::move(slots)),
      store_(std::make_unique<nn::ParamStore>()) {
  Rng rng(DeriveSeed(config_.seed, 0));
  nn::ParamStore& store = *store_;
  encoder_ = encoders::SequenceEncoder(store, "encoder", config_.encoder, words_.size(), rng,
                                       nullptr);
  const int hidden = encoder_.output_dim();
  const int slot_hidden = config_.slot_encoder.hidden_dim;
  coarse_head_ = nn::Linear(store, "coarse.linear", hidden, coarse_.size(), rng);
  fine_head_ = nn::Linear(store, "fine.linear", hidden, fine_.size(), rng);
  fertility_head_ = nn::Linear(store, "fertility.linear", hidden, config_.max_fertility, rng);
  slot_projection_ = nn::Linear(store, "copy.proj", hidden, slot_hidden, rng);
  if (config_.copy_index_embedding) {
    copy_embedding_ = nn::Embedding(store, "copy.index", config_.max_fertility, slot_hidden, rng);
  }
  slot_encoder_ = encoders::TransformerEncoder(store, "slot_encoder", config_.slot_encoder, rng);
  slot_head_ = nn::Linear(store, "slot.linear", slot_hidden, slots_.size(), rng);
}

Var X2Parser::Encode(const std::vector<std::string>& tokens) const {
  Require(!tokens.empty(), ErrorCode::kInvalidArgument, "empty utterance");
  std::vector<int> ids;
  ids.reserve(tokens.size() + 1);
  ids.push_back(words_.Id(kClsToken));
  for (const std::string& token : tokens) ids.push_back(words_.Id(token));
  return encoder_.Forward(ids);
}

Var X2Parser::SlotLogits(const Var& token_states, std::span<const int> fertility) const {
  for (int f : fertility) {
    Require(f <= config_.max_fertility, ErrorCode::kInvalidArgument,
            "fertility exceeds max_fertility");
  }
  Var expanded = slot_projection_.Forward(CopyHiddens(token_states, fertility));
  if (config_.copy_index_embedding) {
    expanded = nn::Add(expanded, copy_embedding_.Forward(CopyIndices(fertility)));
  }
  return slot_head_.Forward(slot_encoder_.Forward(expanded));
}

X2Losses X2Parser::Loss(std::span<const std::vector<std::string>> tokens,
                        std::span<const X2Targets> targets) const {
  Require(tokens.size() == targets.size(), ErrorCode::kShapeMismatch,
          "one target per utterance required");
  Require(!tokens.empty(), ErrorCode::kInvalidArgument, "empty batch");
  X2Losses losses;
  const double inv = 1.0 / static_cast<double>(tokens.size());
  std::vector<Var> terms;
  for (size_t b = 0; b < tokens.size(); ++b) {
    const X2Targets& target = targets[b];
    const int n = static_cast<int>(tokens[b].size());
    Require(static_cast<int>(target.flat.fine.size()) == n &&
                static_cast<int>(target.fertility.size()) == n,
            ErrorCode::kShapeMismatch, "targets do not match the utterance length");
    Require(std::accumulate(target.fertility.begin(), target.fertility.end(), 0) ==
                static_cast<int>(target.slots.size()),
            ErrorCode::kShapeMismatch, "flattened slots do not match the fertility");
    const Var states = Encode(tokens[b]);
    const Var token_states = nn::SliceRows(states, 1, n);

    const std::vector<int> coarse_target = {coarse_.Id(target.flat.coarse)};
    const Var coarse = nn::CrossEntropy(coarse_head_.Forward(nn::SliceRows(states, 0, 1)),
                                        coarse_target);
    const Var fine = nn::CrossEntropy(fine_head_.Forward(token_states), fine_.Ids(target.flat.fine));
    std::vector<int> fertility_classes;
    for (int f : target.fertility) fertility_classes.push_back(f - 1);
    const Var fertility =
        nn::CrossEntropy(fertility_head_.Forward(token_states), fertility_classes);
    const Var slots =
        nn::CrossEntropy(SlotLogits(token_states, target.fertility), slots_.Ids(target.slots));

    losses.coarse += inv * coarse.item();
    losses.fine += inv * fine.item();
    losses.fertility += inv * fertility.item();
    losses.slots += inv * slots.item();
    terms.push_back(nn::Scale(coarse, config_.coarse_weight));
    terms.push_back(nn::Scale(fine, config_.fine_weight));
    terms.push_back(nn::Scale(fertility, config_.fertility_weight));
    terms.push_back(nn::Scale(slots, config_.slot_weight));
  }
  losses.total = nn::Scale(nn::Sum(nn::ConcatRows(terms)), inv);
  return losses;
}

std::vector<int> X2Parser::PredictFertility(const std::vector<std::string>& tokens) const {
  const Var states = Encode(tokens);
  const nn::Matrix logits =
      fertility_head_.Forward(nn::SliceRows(states, 1, static_cast<Eigen::Index>(tokens.size())))
          .value();
  std::vector<int> fertility;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) fertility.push_back(ArgmaxRow(logits, i) + 1);
  return fertility;
}

std::vector<std::string> X2Parser::PredictSlots(const std::vector<std::string>& tokens,
                                                std::span<const int> fertility) const {
  const Var states = Encode(tokens);
  const nn::Matrix logits =
      SlotLogits(nn::SliceRows(states, 1, static_cast<Eigen::Index>(tokens.size())), fertility)
          .value();
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) labels.push_back(slots_.Token(ArgmaxRow(logits, i)));
  return labels;
}

ParseResult X2Parser::Parse(const std::vector<std::string>& tokens) const {
  ParseResult result;
  const Eigen::Index n = static_cast<Eigen::Index>(tokens.size());
  const Var states = Encode(tokens);
  ++result.encoder_passes;
  const Var token_states = nn::SliceRows(states, 1, n);

  const nn::Matrix coarse = coarse_head_.Forward(nn::SliceRows(states, 0, 1)).value();
  const nn::Matrix fine = fine_head_.Forward(token_states).value();
  const nn::Matrix fertility = fertility_head_.Forward(token_states).value();
  result.flat.coarse = coarse_.Token(ArgmaxRow(coarse, 0));
  for (Eigen::Index i = 0; i < n; ++i) {
    result.flat.fine.push_back(fine_.Token(ArgmaxRow(fine, i)));
    result.fertility.push_back(ArgmaxRow(fertility, i) + 1);
  }

  const nn::Matrix slot_logits = SlotLogits(token_states, result.fertility).value();
  ++result.decoder_passes;
  std::vector<std::string> slots;
  for (Eigen::Index i = 0; i < slot_logits.rows(); ++i) {
    slots.push_back(slots_.Token(ArgmaxRow(slot_logits, i)));
  }
  result.flat.stacks = RegroupSlots(slots, result.fertility);

  parse_repr::DecodeResult decoded =
      parse_repr::TryDecodeFlat(result.flat, tokens, {config_.max_fertility, true});
  result.tree = std::move(decoded.tree);
  result.diagnostics = std::move(decoded.diagnostics);
  result.repairs = decoded.repairs;
  return result;
}

void X2Parser::Save(const std::string& directory) const {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  config_.ToConfig().Save((dir / "config.txt").string());
  words_.Save((dir / "words.txt").string());
  coarse_.Save((dir / "coarse.txt").string());
  fine_.Save((dir / "fine.txt").string());
  slots_.Save((dir / "slots.txt").string());
  store_->Save((dir / "model.ckpt").string());
}

X2Parser X2Parser::Load(const std::string& directory) {
  const std::filesystem::path dir(directory);
  X2Parser parser(X2Config::FromConfig(KeyValueConfig::Load((dir / "config.txt").string())),
                  Vocabulary::Load((dir / "words.txt").string()),
                  Vocabulary::Load((dir / "coarse.txt").string()),
                  Vocabulary::Load((dir / "fine.txt").string()),
                  Vocabulary::Load((dir / "slots.txt").string()));
  parser.store_->Load((dir / "model.ckpt").string());
  return parser;
}

double ScheduledLearningRate(const X2Config& config, int step) {
  double scale = 1.0;
  if (step < config.warmup_steps) {
    scale = static_cast<double>(step + 1) / static_cast<double>(config.warmup_steps);
  } else if (config.decay_to_zero && config.steps > config.warmup_steps) {
    scale = static_cast<double>(config.steps - step) /
            static_cast<double>(config.steps - config.warmup_steps);
  }
  return config.learning_rate * scale;
}

X2TrainLog TrainX2Parser(X2Parser& parser, std::span<const parse_repr::ParseTree> trees) {
  const X2Config& config = parser.config();
  Require(!trees.empty(), ErrorCode::kInvalidArgument, "no training trees");
  std::vector<std::vector<std::string>> tokens;
  std::vector<X2Targets> targets;
  for (const parse_repr::ParseTree& tree : trees) {
    tokens.push_back(tree.tokens);
    targets.push_back(MakeTargets(parse_repr::EncodeFlat(tree, {config.max_fertility, false})));
  }
  nn::Adam adam(parser.params().Trainable(),
                {config.learning_rate, 0.9, 0.999, 1e-8, config.clip_norm});
  Rng rng(DeriveSeed(config.seed, 1));
  std::vector<size_t> order(trees.size());
  std::iota(order.begin(), order.end(), 0);
  size_t cursor = order.size();
  X2TrainLog log;
  std::vector<std::vector<std::string>> batch_tokens;
  std::vector<X2Targets> batch_targets;
  for (int step = 0; step < config.steps; ++step) {
    batch_tokens.clear();
    batch_targets.clear();
    for (int k = 0; k < config.batch_size && k < static_cast<int>(order.size()); ++k) {
      if (cursor == order.size()) {
        rng.Shuffle(std::span<size_t>(order));
        cursor = 0;
      }
      batch_tokens.push_back(tokens[order[cursor]]);
      batch_targets.push_back(targets[order[cursor]]);
      ++cursor;
    }
    adam.set_learning_rate(ScheduledLearningRate(config, step));
    adam.ZeroGrad();
    X2Losses losses = parser.Loss(batch_tokens, batch_targets);
    nn::Backward(losses.total);
    adam.Step();
    log.step_loss.push_back(losses.total.item());
  }
  return log;
}

double ExactMatch(const X2Parser& parser, std::span<const parse_repr::ParseTree> trees) {
  if (trees.empty()) return 0.0;
  int hits = 0;
  for (const parse_repr::ParseTree& tree : trees) {
    const parse_repr::FlatLabels gold =
        parse_repr::EncodeFlat(tree, {parser.config().max_fertility, false});
    if (parse_repr::FlatEquals(gold, parser.Parse(tree.tokens).flat)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trees.size());
}

}  // namespace xfer::x2parser
