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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "gradient_check.h"
#include "xfer/common/error.h"
#include "xfer/harness/synthetic.h"
#include "xfer/parse_repr/bracketed.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/x2parser/fertility.h"
#include "xfer/x2parser/model.h"

namespace xfer::x2parser {
namespace {

using nn::Matrix;
using nn::Var;
using parse_repr::FlatLabels;
using parse_repr::ParseTree;
using xfer::testing::CheckGradients;

Matrix RandomMatrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal();
  return m;
}

X2Config TinyConfig() {
  X2Config config;
  config.encoder.embedding_dim = 8;
  config.encoder.hidden_dim = 8;
  config.encoder.ort.layers = 1;
  config.encoder.ort.heads = 2;
  config.encoder.ort.filter_dim = 8;
  config.slot_encoder.hidden_dim = 8;
  config.slot_encoder.heads = 2;
  config.slot_encoder.filter_dim = 8;
  return config;
}

std::vector<ParseTree> SmallTrees() {
  return {parse_repr::ParseBracketed(
              "[IN:SEND_MESSAGE message [SL:RECIPIENT [IN:GET_CONTACT my [SL:RELATION mom ] ] ] "
              "[SL:CONTENT hello ] ]"),
          parse_repr::ParseBracketed("[IN:PLAY_MUSIC play [SL:ARTIST adele ] ]"),
          parse_repr::ParseBracketed("[IN:GET_WEATHER weather today ]")};
}

std::vector<X2Targets> TargetsOf(const std::vector<ParseTree>& trees) {
  std::vector<X2Targets> targets;
  for (const ParseTree& tree : trees) targets.push_back(MakeTargets(parse_repr::EncodeFlat(tree)));
  return targets;
}

std::vector<std::vector<std::string>> TokensOf(const std::vector<ParseTree>& trees) {
  std::vector<std::vector<std::string>> tokens;
  for (const ParseTree& tree : trees) tokens.push_back(tree.tokens);
  return tokens;
}

// Drives a linear head towards one class: zero weights, large bias.
void ForceClass(nn::ParamStore& store, const std::string& head, int cls) {
  store.Get(head + ".weight").mutable_value().setZero();
  Matrix& bias = store.Get(head + ".bias").mutable_value();
  bias.setZero();
  bias(0, cls) = 50.0;
}

TEST(CopyHiddensTest, AllOnesIsIdentity) {
  Rng rng(1);
  Var h = Var(RandomMatrix(rng, 4, 3));
  const std::vector<int> ones(4, 1);
  EXPECT_EQ(CopyHiddens(h, ones).value(), h.value());
}

TEST(CopyHiddensTest, RepeatsRowsPerFertility) {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  const std::vector<int> fertility = {2, 1};
  Matrix expected(3, 2);
  expected << 1, 2, 1, 2, 3, 4;
  EXPECT_EQ(CopyHiddens(Var(m), fertility).value(), expected);
}

TEST(CopyHiddensTest, RandomBlocksCopyRowsBitwise) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    Var h = Var(RandomMatrix(rng, n, 5));
    std::vector<int> fertility;
    for (int i = 0; i < n; ++i) fertility.push_back(1 + static_cast<int>(rng.Below(3)));
    const Matrix out = CopyHiddens(h, fertility).value();
    ASSERT_EQ(out.rows(), std::accumulate(fertility.begin(), fertility.end(), 0));
    int row = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < fertility[i]; ++k, ++row) {
        EXPECT_EQ(out.row(row), h.value().row(i));
      }
    }
  }
}

TEST(CopyHiddensTest, RejectsBadFertility) {
  Var h = Var(Matrix::Ones(2, 2));
  const std::vector<int> zero = {1, 0};
  const std::vector<int> negative = {-1, 1};
  const std::vector<int> short_f = {1};
  EXPECT_THROW(CopyHiddens(h, zero), Error);
  EXPECT_THROW(CopyHiddens(h, negative), Error);
  EXPECT_THROW(CopyHiddens(h, short_f), Error);
}

TEST(TargetsTest, GoldFertilityFollowsStackDepth) {
  FlatLabels flat;
  flat.coarse = "CREATE_REMINDER";
  flat.fine = {"O", "O"};
  flat.stacks = {{"B-TODO", "B-METHOD-MESSAGE"}, {}};
  const X2Targets targets = MakeTargets(flat);
  EXPECT_EQ(targets.fertility, (std::vector<int>{2, 1}));
  EXPECT_EQ(targets.slots, (std::vector<std::string>{"B-TODO", "B-METHOD-MESSAGE", "O"}));
}

TEST(TargetsTest, RegroupInvertsFlatteningOnGoldFertility) {
  for (const ParseTree& tree : harness::MakeParserToy(100, 3)) {
    const X2Targets targets = MakeTargets(parse_repr::EncodeFlat(tree));
    for (int f : targets.fertility) {
      EXPECT_GE(f, 1);
      EXPECT_LE(f, 3);
    }
    EXPECT_EQ(RegroupSlots(targets.slots, targets.fertility), targets.flat.stacks);
  }
}

TEST(TargetsTest, RegroupKeepsOutermostFirst) {
  const std::vector<std::string> slots = {"B-OUTER", "B-INNER", "I-OUTER"};
  const std::vector<int> fertility = {2, 1};
  const auto stacks = RegroupSlots(slots, fertility);
  EXPECT_EQ(stacks[0], (std::vector<std::string>{"B-OUTER", "B-INNER"}));
  EXPECT_EQ(stacks[1], (std::vector<std::string>{"I-OUTER"}));
  const std::vector<int> wrong = {2, 2};
  EXPECT_THROW(RegroupSlots(slots, wrong), Error);
}

TEST(X2ConfigTest, RoundTripsAndValidates) {
  X2Config config;
  config.slot_encoder.hidden_dim = 128;
  config.learning_rate = 0.0025;
  config.copy_index_embedding = false;
  const X2Config back = X2Config::FromConfig(config.ToConfig());
  EXPECT_EQ(back.ToConfig().Serialize(), config.ToConfig().Serialize());
  EXPECT_EQ(back.slot_encoder.hidden_dim, 128);
  EXPECT_FALSE(back.copy_index_embedding);

  X2Config defaults;
  EXPECT_EQ(defaults.max_fertility, 3);
  EXPECT_EQ(defaults.slot_encoder.layers, 1);
  EXPECT_EQ(defaults.slot_encoder.heads, 4);
  EXPECT_EQ(defaults.slot_encoder.hidden_dim, 400);
  EXPECT_EQ(defaults.slot_encoder.filter_dim, 64);

  KeyValueConfig bad = config.ToConfig();
  bad.Set("max_fertility", "0");
  EXPECT_THROW(X2Config::FromConfig(bad), Error);
}

TEST(X2ConfigTest, ScheduleWarmsUpThenDecays) {
  X2Config config;
  config.steps = 100;
  config.warmup_steps = 10;
  config.learning_rate = 1.0;
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(config, 0), 0.1);
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(config, 9), 1.0);
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(config, 10), 1.0);
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(config, 55), 0.5);
  config.decay_to_zero = false;
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(config, 99), 1.0);
}

TEST(X2LossTest, MatchesFiniteDifferences) {
  const auto trees = SmallTrees();
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  const auto tokens = TokensOf(trees);
  const auto targets = TargetsOf(trees);
  Rng rng(5);
  // Move biases and norms away from their symmetric initial values.
  for (Var p : parser.params().Trainable()) {
    for (Eigen::Index i = 0; i < p.value().size(); ++i) {
      p.mutable_value().data()[i] += 0.1 * rng.Normal();
    }
  }
  const auto result = CheckGradients([&] { return parser.Loss(tokens, targets).total; },
                                     parser.params().Trainable());
  EXPECT_TRUE(result.Passed(1e-4)) << result.worst;
}

TEST(X2LossTest, UniformPredictionsCostLogArity) {
  const auto trees = SmallTrees();
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  for (const char* head : {"coarse.linear", "fine.linear", "fertility.linear", "slot.linear"}) {
    parser.params().Get(std::string(head) + ".weight").mutable_value().setZero();
    parser.params().Get(std::string(head) + ".bias").mutable_value().setZero();
  }
  const std::vector<ParseTree> one = {trees[0]};
  const X2Losses losses = parser.Loss(TokensOf(one), TargetsOf(one));
  const X2Targets target = TargetsOf(one)[0];
  const double n = static_cast<double>(target.fertility.size());
  const double copies = static_cast<double>(target.slots.size());
  EXPECT_NEAR(losses.coarse, std::log(parser.coarse_labels().size()), 1e-12);
  EXPECT_NEAR(losses.fine, n * std::log(parser.fine_labels().size()), 1e-12);
  EXPECT_NEAR(losses.fertility, n * std::log(3.0), 1e-12);
  EXPECT_NEAR(losses.slots, copies * std::log(parser.slot_labels().size()), 1e-12);
  EXPECT_NEAR(losses.total.item(),
              losses.coarse + losses.fine + losses.fertility + losses.slots, 1e-12);
}

TEST(X2LossTest, RejectsInconsistentTargets) {
  const auto trees = SmallTrees();
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  auto tokens = TokensOf(trees);
  auto targets = TargetsOf(trees);
  targets[0].fertility[0] += 1;
  EXPECT_THROW(parser.Loss(tokens, targets), Error);
  targets = TargetsOf(trees);
  tokens[1].push_back("extra");
  EXPECT_THROW(parser.Loss(tokens, targets), Error);
  targets = TargetsOf(trees);
  targets.pop_back();
  EXPECT_THROW(parser.Loss(TokensOf(trees), targets), Error);
}

TEST(X2ParserTest, SingleIntentInventoryAndLengths) {
  const std::vector<ParseTree> trees = {parse_repr::ParseBracketed("[IN:ONLY a b c ]")};
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  const ParseResult result = parser.Parse({"x", "a", "y"});
  EXPECT_EQ(result.flat.coarse, "ONLY");
  EXPECT_EQ(result.flat.fine.size(), 3u);
  EXPECT_EQ(result.fertility.size(), 3u);
}

TEST(X2ParserTest, EmptyEntityUtteranceDecodesToSingleNode) {
  const auto trees = SmallTrees();
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  ForceClass(parser.params(), "fine.linear", parser.fine_labels().Id("O"));
  ForceClass(parser.params(), "fertility.linear", 0);
  ForceClass(parser.params(), "slot.linear", parser.slot_labels().Id("O"));
  const ParseResult result = parser.Parse({"weather", "today"});
  ASSERT_TRUE(result.tree.has_value());
  EXPECT_TRUE(result.tree->root.children.empty());
  EXPECT_EQ(result.flat.stacks, (std::vector<std::vector<std::string>>{{}, {}}));
  EXPECT_EQ(result.repairs, 0);
}

TEST(X2ParserTest, OneDecoderPassRegardlessOfLength) {
  const auto trees = SmallTrees();
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  ForceClass(parser.params(), "fertility.linear", 0);
  for (int length : {5, 40}) {
    const std::vector<std::string> tokens(length, "play");
    const ParseResult result = parser.Parse(tokens);
    EXPECT_EQ(std::accumulate(result.fertility.begin(), result.fertility.end(), 0), length);
    EXPECT_EQ(result.encoder_passes, 1);
    EXPECT_EQ(result.decoder_passes, 1);
  }
}

TEST(X2ParserTest, PredictedFertilityMatchesSlotCount) {
  const auto trees = harness::MakeParserToy(20, 4);
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  for (const ParseTree& tree : trees) {
    const std::vector<int> fertility = parser.PredictFertility(tree.tokens);
    for (int f : fertility) {
      EXPECT_GE(f, 1);
      EXPECT_LE(f, 3);
    }
    EXPECT_EQ(static_cast<int>(parser.PredictSlots(tree.tokens, fertility).size()),
              std::accumulate(fertility.begin(), fertility.end(), 0));
  }
}

TEST(X2ParserTest, InferenceIsDeterministic) {
  const auto trees = harness::MakeParserToy(10, 6);
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  for (const ParseTree& tree : trees) {
    const ParseResult a = parser.Parse(tree.tokens);
    const ParseResult b = parser.Parse(tree.tokens);
    EXPECT_EQ(a.flat, b.flat);
    EXPECT_EQ(a.tree, b.tree);
  }
}

TEST(X2ParserTest, SaveLoadPreservesPredictions) {
  const auto trees = harness::MakeParserToy(10, 7);
  X2Parser parser = X2Parser::Build(TinyConfig(), trees);
  const std::string dir =
      (std::filesystem::temp_directory_path() / "xfer_x2parser_roundtrip").string();
  std::filesystem::remove_all(dir);
  parser.Save(dir);
  const X2Parser loaded = X2Parser::Load(dir);
  for (const ParseTree& tree : trees) {
    EXPECT_EQ(loaded.Parse(tree.tokens).flat, parser.Parse(tree.tokens).flat);
  }
  std::filesystem::remove_all(dir);
}

TEST(X2ParserTest, OverfitsSmallToySet) {
  const auto trees = harness::MakeParserToy(50, 8);
  X2Config config;
  config.encoder.ort.filter_dim = 64;
  config.slot_encoder.hidden_dim = 64;
  config.steps = 200;
  config.batch_size = 16;
  X2Parser parser = X2Parser::Build(config, trees);
  const X2TrainLog log = TrainX2Parser(parser, trees);
  ASSERT_EQ(log.step_loss.size(), 200u);
  // Smoothed loss decreases window to window while it is still large, and
  // ends two orders of magnitude below where it started.
  auto window = [&](int start) {
    return std::accumulate(log.step_loss.begin() + start, log.step_loss.begin() + start + 20,
                           0.0) / 20.0;
  };
  for (int start = 0; start + 40 <= 120; start += 20) EXPECT_LT(window(start + 20), window(start));
  EXPECT_LT(window(180), 0.01 * window(0));

  // Teacher-forced gold fertility reproduces the gold stacks.
  int stack_hits = 0;
  for (const ParseTree& tree : trees) {
    const X2Targets target = MakeTargets(parse_repr::EncodeFlat(tree));
    const auto slots = parser.PredictSlots(tree.tokens, target.fertility);
    if (RegroupSlots(slots, target.fertility) == target.flat.stacks) ++stack_hits;
  }
  EXPECT_GE(stack_hits, 48);
  EXPECT_GE(ExactMatch(parser, trees), 0.95);
  for (const ParseTree& tree : trees) {
    const ParseResult result = parser.Parse(tree.tokens);
    if (parse_repr::FlatEquals(result.flat, parse_repr::EncodeFlat(tree))) {
      ASSERT_TRUE(result.tree.has_value());
      EXPECT_EQ(*result.tree, tree);
    }
  }
}

}  // namespace
}  // namespace xfer::x2parser
