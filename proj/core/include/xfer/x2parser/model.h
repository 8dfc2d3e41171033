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

#ifndef XFER_X2PARSER_MODEL_H_
#define XFER_X2PARSER_MODEL_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xfer/common/kv_config.h"
#include "xfer/common/vocabulary.h"
#include "xfer/encoders/sequence_encoder.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/parse_repr/parse_tree.h"
#include "xfer/x2parser/fertility.h"

namespace xfer::x2parser {

struct X2Config {
  // Utterance encoder; a "[CLS]" token is prepended and its state feeds
  // the coarse-intent classifier.
  encoders::SequenceEncoderConfig encoder;
  // Slot encoder over the copied hidden states.
  encoders::OrtConfig slot_encoder;
  int max_fertility = 3;
  // Learned embedding of the within-block copy index, added to the copied
  // states so copies of one token can emit different stack levels.
  bool copy_index_embedding = true;
  // Weights of the four cross-entropy terms.
  double coarse_weight = 1.0;
  double fine_weight = 1.0;
  double fertility_weight = 1.0;
  double slot_weight = 1.0;

  int steps = 300;
  int batch_size = 32;
  double learning_rate = 5e-3;
  // Linear warm-up over the first warmup_steps, then linear decay to zero at
  // \`steps\` when decay_to_zero is set.
  int warmup_steps = 30;
  bool decay_to_zero = true;
  double clip_norm = 5.0;
  uint64_t seed = 13;

  X2Config();
  void Validate() const;
  // Keys: encoder.*, slot_encoder.{layers,heads,hidden_dim,filter_dim,
  // conv_kernel,positional_mode,max_length}, max_fertility,
  // copy_index_embedding, {coarse,fine,fertility,slot}_weight, steps,
  // batch_size, learning_rate, warmup_steps, decay_to_zero, clip_norm, seed.
  static X2Config FromConfig(const KeyValueConfig& config);
  KeyValueConfig ToConfig() const;
};

struct X2Losses {
  nn::Var total;
  double coarse = 0.0;
  double fine = 0.0;
  double fertility = 0.0;
  double slots = 0.0;
};

struct ParseResult {
  parse_repr::FlatLabels flat;
  std::vector<int> fertility;
  std::optional<parse_repr::ParseTree> tree;  // decoded in repair mode
  std::vector<parse_repr::Diagnostic> diagnostics;
  int repairs = 0;
  int encoder_passes = 0;
  int decoder_passes = 0;  // slot-encoder invocations; 1 regardless of length
};

// Fertility-based non-autoregressive parser: one encoder pass predicts the
// coarse intent (from [CLS]), fine intents and per-token fertility; hidden
// states are copied by fertility and one slot-encoder pass labels every copy.
// Parameters: "encoder.*", "coarse.*", "fine.*", "fertility.*", "copy.*",
// "slot_encoder.*", "slot.*".
class X2Parser {
 public:
  // Label inventories come from `trees`, which must all encode.
  static X2Parser Build(const X2Config& config, std::span<const parse_repr::ParseTree> trees);

  X2Parser(X2Parser&&) = default;
  X2Parser& operator=(X2Parser&&) = default;

  // Sum of weighted cross-entropies (coarse + fine + fertility + slots) over
  // the batch; slot copies use gold fertility (teacher forcing).
  X2Losses Loss(std::span<const std::vector<std::string>> tokens,
                std::span<const X2Targets> targets) const;

  // Encoder pass plus fertility (argmax + 1), for inspection.
  std::vector<int> PredictFertility(const std::vector<std::string>& tokens) const;

  ParseResult Parse(const std::vector<std::string>& tokens) const;
  // Slot labels for the given fertility, with exactly one slot-encoder pass.
  std::vector<std::string> PredictSlots(const std::vector<std::string>& tokens,
                                        std::span<const int> fertility) const;

  void Save(const std::string& directory) const;
  static X2Parser Load(const std::string& directory);

  const X2Config& config() const { return config_; }
  nn::ParamStore& params() { return *store_; }
  const nn::ParamStore& params() const { return *store_; }
  const Vocabulary& words() const { return words_; }
  const Vocabulary& coarse_labels() const { return coarse_; }
  const Vocabulary& fine_labels() const { return fine_; }
  const Vocabulary& slot_labels() const { return slots_; }

 private:
  X2Parser(const X2Config& config, Vocabulary words, Vocabulary coarse, Vocabulary fine,
           Vocabulary slots);

  nn::Var Encode(const std::vector<std::string>& tokens) const;  // (n+1) x d, row 0 = [CLS]
  nn::Var SlotLogits(const nn::Var& token_states, std::span<const int> fertility) const;

  X2Config config_;
  Vocabulary words_;
  Vocabulary coarse_;
  Vocabulary fine_;
  Vocabulary slots_;
  std::unique_ptr<nn::ParamStore> store_;
  encoders::SequenceEncoder encoder_;
  nn::Linear coarse_head_;
  nn::Linear fine_head_;
  nn::Linear fertility_head_;
  nn::Linear slot_projection_;  // encoder width -> slot encoder width
  nn::Embedding copy_embedding_;
  encoders::TransformerEncoder slot_encoder_;
  nn::Linear slot_head_;
};

struct X2TrainLog {
  std::vector<double> step_loss;
};

// Learning rate at \`step\` under the warm-up/decay schedule.
double ScheduledLearningRate(const X2Config& config, int step);

// Adam for config.steps steps over seeded batches of `trees`.
X2TrainLog TrainX2Parser(X2Parser& parser, std::span<const parse_repr::ParseTree> trees);

// Share of trees whose parse has the same flat labels (FlatEquals).
double ExactMatch(const X2Parser& parser, std::span<const parse_repr::ParseTree> trees);

}  // namespace xfer::x2parser

#endif  // XFER_X2PARSER_MODEL_H_
