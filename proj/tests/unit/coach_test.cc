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

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gradient_check.h"
#include "xfer/coach/descriptions.h"
#include "xfer/coach/model.h"
#include "xfer/coach/templates.h"
#include "xfer/common/error.h"
#include "xfer/harness/synthetic.h"
#include "xfer/nn/optim.h"

namespace xfer::coach {
namespace {

using harness::TaggedSequence;
using nn::Matrix;
using nn::Var;
using xfer::testing::CheckGradients;

Matrix RandomMatrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal();
  return m;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("xfer_coach_" + name)).string();
}

std::vector<TaggedSequence> SmallData() {
  return {{{"fly", "to", "new", "york"}, {"O", "O", "B-city", "I-city"}, ""},
          {{"play", "adele", "now"}, {"O", "B-artist", "O"}, ""},
          {{"hello", "there"}, {"O", "O"}, ""},
          {{"weather", "in", "paris", "today"}, {"O", "O", "B-city", "B-date"}, ""}};
}

std::vector<SlotDescription> SmallDescriptions() {
  return {{"city", {"city", "name"}}, {"artist", {"artist"}}, {"date", {"day", "date"}}};
}

CoachConfig SmallConfig() {
  CoachConfig config;
  config.encoder.embedding_dim = 4;
  config.encoder.hidden_dim = 4;
  config.span_hidden = 4;
  config.batch_size = 2;
  return config;
}

// ---------------------------------------------------------------- descriptions

TEST(DescriptionTest, RowsAreSumsOfWordEmbeddings) {
  std::map<std::string, nn::Vector> table = {{"a", nn::Vector::Unit(3, 0)},
                                             {"b", nn::Vector::Unit(3, 1)},
                                             {"c", nn::Vector::Constant(3, 2.0)}};
  auto embed = [&](const std::string& w) { return table.at(w); };
  Matrix m = DescriptionMatrix({{"X", {"a", "b"}}, {"Y", {"c"}}}, embed);
  EXPECT_EQ(m, (Matrix{{1, 1, 0}, {2, 2, 2}}));
}

TEST(DescriptionTest, TypingPicksBestRow) {
  Matrix basis = Matrix::Identity(3, 3);
  std::vector<nn::Vector> reps = {nn::Vector::Unit(3, 2), nn::Vector::Unit(3, 0)};
  EXPECT_EQ(TypeEntities(reps, basis), (std::vector<int>{2, 0}));
  EXPECT_TRUE(TypeEntities({}, basis).empty());
  // Joint positive scaling keeps the argmax.
  Rng rng(1);
  Matrix m = RandomMatrix(rng, 4, 3);
  std::vector<nn::Vector> random = {RandomMatrix(rng, 3, 1).col(0), RandomMatrix(rng, 3, 1).col(0)};
  std::vector<nn::Vector> scaled = {3.5 * random[0], 3.5 * random[1]};
  EXPECT_EQ(TypeEntities(random, m), TypeEntities(scaled, Matrix(0.25 * m)));
}

TEST(DescriptionTest, FileRoundTripAndErrors) {
  const std::string path = TempPath("desc.tsv");
  SaveSlotDescriptions(SmallDescriptions(), path);
  EXPECT_EQ(LoadSlotDescriptions(path), SmallDescriptions());
  std::ofstream(path) << "city\tcity name\nartist singer\n";
  try {
    LoadSlotDescriptions(path);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormatError);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  std::ofstream(path) << "city\tcity\ncity\ttown\n";
  EXPECT_THROW(LoadSlotDescriptions(path), Error);
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------- templates

TEST(TemplateTest, OneEntityTwoTypesForcesTheOther) {
  Rng rng(2);
  const std::vector<std::string> tokens = {"fly", "to", "new", "york"};
  const std::vector<std::string> labels = {"O", "O", "B-A", "I-A"};
  const std::vector<std::string> inventory = {"A", "B"};
  Templates t = MakeTemplates(tokens, labels, inventory, rng);
  ASSERT_TRUE(t.usable);
  EXPECT_EQ(t.right, (std::vector<std::string>{"fly", "to", "<A>"}));
  ASSERT_EQ(t.wrong.size(), 2u);
  for (const auto& w : t.wrong) EXPECT_EQ(w, (std::vector<std::string>{"fly", "to", "<B>"}));
}

TEST(TemplateTest, NoEntitiesIsUnusable) {
  Rng rng(3);
  const std::vector<std::string> tokens = {"hi", "there"};
  const std::vector<std::string> labels = {"O", "O"};
  const std::vector<std::string> inventory = {"A", "B"};
  Templates t = MakeTemplates(tokens, labels, inventory, rng);
  EXPECT_FALSE(t.usable);
  EXPECT_EQ(t.right, tokens);
  for (const auto& w : t.wrong) EXPECT_EQ(w, tokens);
}

TEST(TemplateTest, WrongTypesDifferAndGenerationIsSeeded) {
  const std::vector<std::string> tokens = {"a", "b", "c", "d"};
  const std::vector<std::string> labels = {"B-A", "O", "B-C", "I-C"};
  const std::vector<std::string> inventory = {"A", "B", "C", "D"};
  Rng r1(4), r2(4);
  for (int trial = 0; trial < 50; ++trial) {
    Templates t = MakeTemplates(tokens, labels, inventory, r1);
    Templates u = MakeTemplates(tokens, labels, inventory, r2);
    EXPECT_EQ(t.wrong, u.wrong);
    for (const auto& w : t.wrong) {
      ASSERT_EQ(w.size(), 3u);
      EXPECT_NE(w[0], "<A>");
      EXPECT_NE(w[2], "<C>");
    }
  }
}

TEST(TemplateLossTest, AnalyticValues) {
  Var u(Matrix{{1.0, 0.0}});
  Var w(Matrix{{0.0, 1.0}});
  std::vector<Var> wrong = {w};
  TemplateLosses same = ComputeTemplateLosses(u, u, wrong, 1.0);
  EXPECT_DOUBLE_EQ(same.right.item(), 0.0);
  EXPECT_DOUBLE_EQ(same.wrong.item(), -1.0);
  EXPECT_LE(ComputeTemplateLosses(u, w, wrong, 0.5).wrong.item(), 0.0);
}

TEST(TemplateLossTest, GradientMatchesFiniteDifferences) {
  Rng rng(5);
  Var u(RandomMatrix(rng, 1, 4), true), r(RandomMatrix(rng, 1, 4), true);
  Var w1(RandomMatrix(rng, 1, 4), true), w2(RandomMatrix(rng, 1, 4), true);
  auto loss = [&] {
    std::vector<Var> wrong = {w1, w2};
    TemplateLosses t = ComputeTemplateLosses(u, r, wrong, 1.0);
    return nn::Add(t.right, t.wrong);
  };
  auto result = CheckGradients(loss, {u, r, w1, w2});
  EXPECT_TRUE(result.Passed(1e-4)) << result.worst;
}

// ---------------------------------------------------------------- model

TEST(CoachModelTest, CoarseLabelsFollowSpans) {
  const std::vector<std::string> labels = {"O", "B-x", "I-x", "I-y", "O"};
  EXPECT_EQ(CoarseLabels(labels), (std::vector<int>{kCoarseO, kCoarseB, kCoarseI, kCoarseB, kCoarseO}));
}

TEST(CoachModelTest, LossGradientMatchesFiniteDifferences) {
  for (SpanEncoderKind kind :
       {SpanEncoderKind::kBiLstm, SpanEncoderKind::kAttentionSum, SpanEncoderKind::kSum}) {
    CoachConfig config = SmallConfig();
    config.span_encoder = kind;
    auto data = SmallData();
    CoachModel model = CoachModel::Build(config, data, SmallDescriptions());
    // Template losses read detached embeddings by design, so the embedding
    // table is checked against the tagging and typing terms only.
    auto total = [&] {
      Rng rng(6);
      return model.Loss(data, /*warmup=*/false, rng).total;
    };
    auto untemplated = [&] {
      Rng rng(6);
      CoachLosses losses = model.Loss(data, /*warmup=*/false, rng);
      return nn::Add(losses.crf, losses.typing);
    };
    std::vector<Var> embeddings, rest;
    for (const auto& [name, v] : model.params().all()) {
      (name == "encoder.embedding.table" ? embeddings : rest).push_back(v);
    }
    auto result = CheckGradients(total, rest);
    EXPECT_TRUE(result.Passed(1e-4)) << SpanEncoderKindName(kind) << ": " << result.worst;
    auto embedding_result = CheckGradients(untemplated, embeddings);
    EXPECT_TRUE(embedding_result.Passed(1e-4)) << embedding_result.worst;
  }
}

TEST(CoachModelTest, WarmupTemplateLossesMoveOnlyTemplateEncoder) {
  auto data = SmallData();
  CoachModel model = CoachModel::Build(SmallConfig(), data, SmallDescriptions());
  std::map<std::string, Matrix> before;
  for (const auto& [name, v] : model.params().all()) before[name] = v.value();
  nn::Adam adam(model.params().Trainable(), {});
  adam.ZeroGrad();
  Rng rng(7);
  CoachLosses losses = model.Loss(data, /*warmup=*/true, rng);
  nn::Backward(nn::Add(losses.right, losses.wrong));
  adam.Step();
  int moved = 0;
  for (const auto& [name, v] : model.params().all()) {
    if (v.value() != before[name]) {
      EXPECT_EQ(name.rfind("template.", 0), 0u) << name << " moved during warm-up";
      ++moved;
    }
  }
  EXPECT_GT(moved, 0);

  // After warm-up the utterance side receives template gradients too.
  adam.ZeroGrad();
  Rng rng2(7);
  losses = model.Loss(data, /*warmup=*/false, rng2);
  nn::Backward(nn::Add(losses.right, losses.wrong));
  EXPECT_TRUE(model.params().Get("utterance_pool.w").has_grad());
  EXPECT_GT(model.params().Get("utterance_pool.w").grad().norm(), 0.0);
}

TEST(CoachModelTest, TemplateEncoderIsSeparate) {
  CoachModel model = CoachModel::Build(SmallConfig(), SmallData(), SmallDescriptions());
  std::set<std::string> names;
  for (const auto& [name, v] : model.params().all()) names.insert(name);
  EXPECT_TRUE(names.count("template.lstm.fw.input"));
  EXPECT_TRUE(names.count("encoder.lstm.fw.input"));
  EXPECT_NE(model.params().Get("template.lstm.fw.input").node(),
            model.params().Get("encoder.lstm.fw.input").node());
}

TEST(CoachModelTest, MemorizesToyData) {
  auto data = SmallData();
  CoachConfig config = SmallConfig();
  config.encoder.embedding_dim = 8;
  config.encoder.hidden_dim = 8;
  config.epochs = 60;
  config.learning_rate = 0.02;
  CoachModel model = CoachModel::Build(config, data, SmallDescriptions());
  TrainCoach(model, data);
  for (const TaggedSequence& s : data) EXPECT_EQ(model.Predict(s.tokens).labels, s.labels);
  EXPECT_DOUBLE_EQ(model.TypingAccuracy(data), 1.0);
}

TEST(CoachModelTest, ZeroShotTransferBeatsChanceAndFewShotAdapts) {
  harness::CoachToy toy = harness::MakeCoachToy(1);
  CoachConfig config;
  config.encoder.freeze_embeddings = true;
  config.epochs = 6;
  config.learning_rate = 0.01;
  config.seed = 1;
  CoachModel model = CoachModel::Build(config, toy.source_train, toy.source_descriptions,
                                       &toy.embeddings);
  TrainCoach(model, toy.source_train);
  model.SetDescriptions(toy.target_descriptions);
  EXPECT_GT(model.TypingAccuracy(toy.target_test, toy.unseen_type),
            1.0 / toy.target_descriptions.size());
  std::vector<TaggedSequence> shots(toy.target_train.begin(), toy.target_train.begin() + 50);
  TrainCoach(model, shots, {8, 0, 5});
  int exact = 0;
  for (const TaggedSequence& s : toy.target_test) exact += model.Predict(s.tokens).labels == s.labels;
  EXPECT_GE(exact, 85);
}

TEST(CoachModelTest, SaveLoadPreservesPredictions) {
  auto data = SmallData();
  CoachConfig config = SmallConfig();
  config.epochs = 3;
  CoachModel model = CoachModel::Build(config, data, SmallDescriptions());
  TrainCoach(model, data);
  const std::string dir = TempPath("model");
  model.Save(dir);
  CoachModel loaded = CoachModel::Load(dir);
  for (const TaggedSequence& s : data) EXPECT_EQ(loaded.Predict(s.tokens), model.Predict(s.tokens));
  EXPECT_EQ(loaded.descriptions(), model.descriptions());
  std::filesystem::remove_all(dir);
}

TEST(CoachModelTest, RejectsUndescribedGoldType) {
  CoachModel model = CoachModel::Build(SmallConfig(), SmallData(), SmallDescriptions());
  std::vector<TaggedSequence> bad = {{{"x"}, {"B-unknown"}, ""}};
  Rng rng(8);
  EXPECT_THROW(model.Loss(bad, false, rng), Error);
  EXPECT_THROW(model.SetDescriptions({}), Error);
}

TEST(CoachConfigTest, RoundTrip) {
  CoachConfig config = SmallConfig();
  config.span_encoder = SpanEncoderKind::kAttentionSum;
  config.beta = 0.5;
  EXPECT_EQ(CoachConfig::FromConfig(config.ToConfig()).ToConfig().Serialize(),
            config.ToConfig().Serialize());
}

}  // namespace
}  // namespace xfer::coach
