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
#include <string>
#include <vector>

#include "gradient_check.h"
#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/nn/optim.h"
#include "xfer/xling_reg/regularizers.h"
#include "xfer/xling_reg/tagger.h"

namespace xfer::xling_reg {
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

// Weather / alarm utterances with a city or time slot.
std::vector<TaggedSequence> ToyData(int count, uint64_t seed) {
  const std::vector<std::string> cities = {"paris", "london", "tokyo", "lima"};
  const std::vector<std::string> times = {"noon", "midnight", "dawn"};
  Rng rng(seed);
  std::vector<TaggedSequence> data;
  for (int i = 0; i < count; ++i) {
    if (rng.Bernoulli(0.5)) {
      const std::string& city = cities[rng.Below(cities.size())];
      data.push_back({{"weather", "in", city, "please"}, {"O", "O", "B-LOC", "O"}, "weather"});
    } else {
      const std::string& time = times[rng.Below(times.size())];
      data.push_back({{"wake", "me", "at", time}, {"O", "O", "O", "B-TIME"}, "alarm"});
    }
  }
  return data;
}

TaggerConfig SmallConfig(HeadKind head) {
  TaggerConfig config;
  config.encoder.embedding_dim = 6;
  config.encoder.hidden_dim = 6;
  config.encoder.ort.heads = 2;
  config.encoder.ort.filter_dim = 6;
  config.head = head;
  config.latent_dim = 3;
  config.label_dim = 4;
  config.batch_size = 4;
  config.epochs = 3;
  config.learning_rate = 0.02;
  config.pretrain_epochs = 1;
  return config;
}

// ---------------------------------------------------------------- noise

TEST(NoiseTest, EvalModeAndZeroVarianceAreIdentity) {
  Rng rng(1);
  Var e(RandomMatrix(rng, 3, 4));
  EXPECT_EQ(InjectNoise(e, {0.1, true}, Mode::kEval, rng).value(), e.value());
  EXPECT_EQ(InjectNoise(e, {0.0, true}, Mode::kTrain, rng).value(), e.value());
  EXPECT_EQ(InjectNoise(e, {0.1, false}, Mode::kTrain, rng).value(), e.value());
}

TEST(NoiseTest, EmpiricalVarianceMatches) {
  Rng rng(2);
  Var e(Matrix::Zero(1000, 100));
  Matrix out = InjectNoise(e, {0.1, true}, Mode::kTrain, rng).value();
  const double mean = out.mean();
  const double variance = (out.array() - mean).square().mean();
  EXPECT_NEAR(variance, 0.1, 0.005);
  // Fresh noise per call.
  EXPECT_NE(InjectNoise(e, {0.1, true}, Mode::kTrain, rng).value(), out);
}

TEST(NoiseTest, GradientPassesThrough) {
  Rng rng(3);
  Var e(RandomMatrix(rng, 2, 3), true);
  nn::Backward(nn::Sum(InjectNoise(e, {0.1, true}, Mode::kTrain, rng)));
  EXPECT_EQ(e.grad(), Matrix::Ones(2, 3));
}

// ---------------------------------------------------------------- pooling

TEST(AttentionPoolTest, SingleRowAndZeroVector) {
  Rng rng(4);
  Var one(RandomMatrix(rng, 1, 5));
  Var w(RandomMatrix(rng, 5, 1));
  EXPECT_LT((AttentionPool(one, w).value() - one.value()).norm(), 1e-15);
  Var h(RandomMatrix(rng, 4, 5));
  Matrix mean = h.value().colwise().mean();
  EXPECT_LT((AttentionPool(h, Var(Matrix::Zero(5, 1))).value() - mean).norm(), 1e-12);
}

TEST(AttentionPoolTest, WeightsFormConvexCombination) {
  Rng rng(5);
  for (int probe = 0; probe < 20; ++probe) {
    Var h(RandomMatrix(rng, 1 + probe % 6, 4));
    Var w(RandomMatrix(rng, 4, 1));
    Matrix a = AttentionWeights(h, w).value();
    EXPECT_NEAR(a.sum(), 1.0, 1e-7);
    EXPECT_GE(a.minCoeff(), 0.0);
    EXPECT_LT((AttentionPool(h, w).value() - a * h.value()).norm(), 1e-12);
  }
}

TEST(AttentionPoolTest, GradientMatchesFiniteDifferences) {
  Rng rng(6);
  Var h(RandomMatrix(rng, 4, 3), true);
  Var w(RandomMatrix(rng, 3, 1), true);
  Matrix target = RandomMatrix(rng, 1, 3);
  auto result = CheckGradients(
      [&] { return nn::MeanSquaredError(AttentionPool(h, w), Var(target)); }, {h, w});
  EXPECT_TRUE(result.Passed(1e-4)) << result.worst;
}

// ---------------------------------------------------------------- LVM

TEST(LvmHeadTest, EvalIsDeterministicTrainingIsStochastic) {
  Rng init(7);
  nn::ParamStore store;
  LvmHead head(store, "lvm", 4, 3, 5, init);
  store.Get("lvm.stats.bias").mutable_value().rightCols(3).setZero();  // sigma = 1
  Var h(RandomMatrix(init, 2, 4));
  Rng a(1), b(2);
  EXPECT_EQ(head.Predict(h, Mode::kEval, a).value(), head.Predict(h, Mode::kEval, b).value());
  Rng c(1), d(2);
  Matrix pc = head.Predict(h, Mode::kTrain, c).value();
  Matrix pd = head.Predict(h, Mode::kTrain, d).value();
  EXPECT_GT((pc - pd).norm(), 1e-6);
  for (Eigen::Index r = 0; r < pc.rows(); ++r) EXPECT_NEAR(pc.row(r).sum(), 1.0, 1e-12);
}

TEST(LvmHeadTest, VanishingVarianceMatchesEval) {
  Rng init(8);
  nn::ParamStore store;
  LvmHead head(store, "lvm", 4, 3, 5, init);
  store.Get("lvm.stats.weight").mutable_value().rightCols(3).setZero();
  store.Get("lvm.stats.bias").mutable_value().rightCols(3).setConstant(-200.0);
  Var h(RandomMatrix(init, 3, 4));
  Rng rng(9);
  EXPECT_LT((head.Predict(h, Mode::kTrain, rng).value() - head.Predict(h, Mode::kEval, rng).value())
                .norm(),
            1e-12);
}

TEST(LvmHeadTest, ReparameterizedGradient) {
  Rng init(10);
  nn::ParamStore store;
  LvmHead head(store, "lvm", 3, 2, 4, init);
  Var h(RandomMatrix(init, 2, 3), true);
  const std::vector<int> gold = {1, 3};
  // Re-seeding inside the closure fixes eps across evaluations.
  auto loss = [&] {
    Rng rng(11);
    return nn::CrossEntropy(head.Logits(head.Sample(head.Encode(h), Mode::kTrain, rng)), gold);
  };
  auto params = store.Trainable();
  params.push_back(h);
  auto result = CheckGradients(loss, params);
  EXPECT_TRUE(result.Passed(1e-4)) << result.worst;
}

// ---------------------------------------------------------------- label regularization

TEST(LabelRegTest, AnalyticValues) {
  Var u(Matrix{{1.0, 0.0}});
  Var v(Matrix{{0.0, 2.0}});
  Var l(Matrix{{0.3, -0.2, 0.5}});
  EXPECT_NEAR(LabelRegLoss(u, u, l, l).item(), 0.0, 1e-15);
  EXPECT_NEAR(LabelRegLoss(u, v, l, l).item(), 1.0, 1e-15);
  EXPECT_THROW(LabelRegLoss(u, Var(Matrix::Zero(1, 2)), l, l), Error);
}

TEST(LabelRegTest, GradientMatchesFiniteDifferences) {
  Rng rng(12);
  Var ua(RandomMatrix(rng, 1, 4), true), ub(RandomMatrix(rng, 1, 4), true);
  Var la(RandomMatrix(rng, 1, 3), true), lb(RandomMatrix(rng, 1, 3), true);
  auto result = CheckGradients([&] { return LabelRegLoss(ua, ub, la, lb); }, {ua, ub, la, lb});
  EXPECT_TRUE(result.Passed(1e-4)) << result.worst;
}

// ---------------------------------------------------------------- ALVM

TEST(AlvmTest, Targets) {
  Matrix u = UniformTarget(2, 5);
  EXPECT_EQ(u, Matrix::Constant(2, 5, 0.2));
  const std::vector<int> gold = {2, 0};
  Matrix y = OneHot(gold, 3);
  EXPECT_EQ(y, (Matrix{{0, 0, 1}, {1, 0, 0}}));
}

TEST(AlvmTest, PerfectPredictionHasZeroLatentLoss) {
  Rng rng(13);
  nn::ParamStore store;
  nn::Linear adversary(store, "adv", 3, 3, rng);
  adversary.weight().node()->value = 1e3 * Matrix::Identity(3, 3);
  adversary.bias().node()->value.setZero();
  Var z(Matrix::Identity(3, 3));
  const std::vector<int> gold = {0, 1, 2};
  AlvmLosses losses = ComputeAlvmLosses(z, adversary, gold);
  EXPECT_LT(losses.latent.item(), 1e-12);
  EXPECT_GT(losses.adversary.item(), 0.0);
}

TEST(AlvmTest, RejectsSingleClass) {
  Rng rng(14);
  nn::ParamStore store;
  nn::Linear adversary(store, "adv", 3, 1, rng);
  const std::vector<int> gold = {0};
  EXPECT_THROW(ComputeAlvmLosses(Var(Matrix::Ones(1, 3)), adversary, gold), Error);
}

TEST(AlvmTest, GradientRouting) {
  Rng rng(15);
  nn::ParamStore store;
  nn::Linear encoder(store, "enc", 4, 3, rng);
  nn::Linear adversary(store, "adv", 3, 5, rng);
  Var x(RandomMatrix(rng, 6, 4));
  const std::vector<int> gold = {0, 1, 2, 3, 4, 0};
  auto snapshot = [&] {
    std::map<std::string, Matrix> values;
    for (const auto& [name, v] : store.all()) values[name] = v.value();
    return values;
  };
  auto changed = [&](const std::map<std::string, Matrix>& before) {
    std::vector<std::string> names;
    for (const auto& [name, v] : store.all()) {
      if (v.value() != before.at(name)) names.push_back(name);
    }
    return names;
  };

  auto before = snapshot();
  nn::Adam adam(store.Trainable(), {});
  adam.ZeroGrad();
  nn::Backward(ComputeAlvmLosses(encoder.Forward(x), adversary, gold).adversary);
  adam.Step();
  EXPECT_EQ(changed(before), (std::vector<std::string>{"adv.bias", "adv.weight"}));

  before = snapshot();
  nn::Adam adam2(store.Trainable(), {});
  adam2.ZeroGrad();
  nn::Backward(ComputeAlvmLosses(encoder.Forward(x), adversary, gold).latent);
  adam2.Step();
  EXPECT_EQ(changed(before), (std::vector<std::string>{"enc.bias", "enc.weight"}));
}

TEST(AlvmTest, GradientsMatchFiniteDifferences) {
  Rng rng(16);
  nn::ParamStore store;
  nn::Linear adversary(store, "adv", 3, 4, rng);
  Var z(RandomMatrix(rng, 5, 3), true);
  const std::vector<int> gold = {0, 1, 2, 3, 1};
  auto params = store.Trainable();
  auto fc = CheckGradients([&] { return ComputeAlvmLosses(z, adversary, gold).adversary; },
                           params);
  EXPECT_TRUE(fc.Passed(1e-4)) << fc.worst;
  auto lvm = CheckGradients([&] { return ComputeAlvmLosses(z, adversary, gold).latent; }, {z});
  EXPECT_TRUE(lvm.Passed(1e-4)) << lvm.worst;
}

TEST(ScheduleTest, AlphaDecaysAfterTwoEpochs) {
  WeightSchedule schedule;
  EXPECT_DOUBLE_EQ(ScheduledWeights(schedule, 0).alpha, 1.0);
  EXPECT_DOUBLE_EQ(ScheduledWeights(schedule, 1).alpha, 1.0);
  EXPECT_NEAR(ScheduledWeights(schedule, 2).alpha, 0.9, 1e-15);
  EXPECT_NEAR(ScheduledWeights(schedule, 3).alpha, 0.81, 1e-15);
  for (int epoch = 0; epoch < 6; ++epoch) EXPECT_DOUBLE_EQ(ScheduledWeights(schedule, epoch).beta, 1.0);
}

// ---------------------------------------------------------------- tagger

TEST(TaggerTest, TotalLossGradientMatchesFiniteDifferences) {
  for (HeadKind head : {HeadKind::kCrf, HeadKind::kSoftmax, HeadKind::kLvm}) {
    TaggerConfig config = SmallConfig(head);
    config.encoder.embedding_dim = 4;
    config.encoder.hidden_dim = 4;
    config.label_dim = 2;
    config.latent_dim = 2;
    auto data = ToyData(2, 17);
    TaggerModel model = TaggerModel::Build(config, data);
    // Routing makes the adversary see only alpha * L^fc and everything else
    // see all terms but L^fc, so each subset is checked against its own
    // objective.
    auto loss_with = [&](LossWeights weights) {
      return [&model, &data, weights] {
        Rng rng(18);
        return model.Loss(data, weights, Mode::kTrain, rng).total;
      };
    };
    std::vector<Var> adversary, rest;
    for (const auto& [name, v] : model.params().all()) {
      if (!v.requires_grad()) continue;
      (name.rfind("adversary", 0) == 0 ? adversary : rest).push_back(v);
    }
    auto result = CheckGradients(loss_with({0.0, 1.3}), rest);
    EXPECT_TRUE(result.Passed(1e-4)) << HeadKindName(head) << ": " << result.worst;
    if (!adversary.empty()) {
      auto routed = CheckGradients(loss_with({0.7, 0.0}), adversary);
      EXPECT_TRUE(routed.Passed(1e-4)) << "adversary: " << routed.worst;
    }
  }
}

TEST(TaggerTest, TrainingFitsToyDataForEveryEncoder) {
  auto data = ToyData(32, 19);
  for (auto kind : {encoders::EncoderKind::kBiLstm, encoders::EncoderKind::kOrt,
                    encoders::EncoderKind::kTransformer}) {
    TaggerConfig config = SmallConfig(HeadKind::kLvm);
    config.encoder.kind = kind;
    config.epochs = 12;
    TaggerModel model = TaggerModel::Build(config, data);
    TaggerTrainLog log = TrainTagger(model, data);
    EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front()) << EncoderKindName(kind);
    int correct = 0;
    for (const TaggedSequence& s : data) correct += model.Predict(s.tokens) == s;
    EXPECT_GE(correct, 30) << EncoderKindName(kind);
  }
}

TEST(TaggerTest, ScheduleRecordedDuringTraining) {
  auto data = ToyData(8, 20);
  TaggerConfig config = SmallConfig(HeadKind::kLvm);
  config.epochs = 4;
  TaggerModel model = TaggerModel::Build(config, data);
  TaggerTrainLog log = TrainTagger(model, data);
  ASSERT_EQ(log.weights.size(), 4u);
  EXPECT_DOUBLE_EQ(log.weights[1].alpha, 1.0);
  EXPECT_NEAR(log.weights[2].alpha, 0.9, 1e-15);
  EXPECT_NEAR(log.weights[3].alpha, 0.81, 1e-15);
}

TEST(TaggerTest, PretrainingReducesLabelRegularization) {
  auto data = ToyData(40, 21);
  TaggerConfig config = SmallConfig(HeadKind::kCrf);
  TaggerModel model = TaggerModel::Build(config, data);
  const double before = model.MeanLabelRegLoss(data);
  PretrainLabelEncoder(model, data, 10, 22);
  EXPECT_LT(model.MeanLabelRegLoss(data), before);
}

TEST(TaggerTest, DeterministicGivenSeed) {
  auto data = ToyData(12, 23);
  TaggerConfig config = SmallConfig(HeadKind::kLvm);
  TaggerModel a = TaggerModel::Build(config, data);
  TaggerModel b = TaggerModel::Build(config, data);
  TaggerTrainLog la = TrainTagger(a, data);
  TaggerTrainLog lb = TrainTagger(b, data);
  EXPECT_EQ(la.epoch_loss, lb.epoch_loss);
  for (const auto& [name, v] : a.params().all()) {
    EXPECT_EQ(v.value(), b.params().Get(name).value()) << name;
  }
}

TEST(TaggerTest, SaveLoadPreservesPredictions) {
  auto data = ToyData(12, 24);
  TaggerConfig config = SmallConfig(HeadKind::kCrf);
  config.encoder.kind = encoders::EncoderKind::kOrt;
  TaggerModel model = TaggerModel::Build(config, data);
  TrainTagger(model, data);
  const std::string dir = (std::filesystem::temp_directory_path() / "xfer_tagger_model").string();
  model.Save(dir);
  TaggerModel loaded = TaggerModel::Load(dir);
  for (const TaggedSequence& s : data) EXPECT_EQ(loaded.Predict(s.tokens), model.Predict(s.tokens));
  // Unknown words map to the unknown entry instead of failing.
  EXPECT_EQ(loaded.Predict({"weather", "in", "oslo"}).labels.size(), 3u);
  std::filesystem::remove_all(dir);
}

TEST(TaggerTest, PretrainedEmbeddingsInitializeAndFreeze) {
  auto data = ToyData(6, 25);
  embed_align::EmbeddingTable table({"paris", "madrid"}, Matrix{{1, 2, 3}, {4, 5, 6}});
  TaggerConfig config = SmallConfig(HeadKind::kSoftmax);
  config.encoder.freeze_embeddings = true;
  TaggerModel model = TaggerModel::Build(config, data, &table);
  Var embedding = model.params().Get("encoder.embedding.table");
  EXPECT_EQ(embedding.cols(), 3);
  EXPECT_FALSE(embedding.requires_grad());
  EXPECT_EQ(Matrix(embedding.value().row(model.words().Id("madrid"))), (Matrix{{4, 5, 6}}));
}

TEST(TaggerTest, ConfigRoundTrip) {
  TaggerConfig config = SmallConfig(HeadKind::kLvm);
  config.noise.variance = 0.05;
  config.encoder.kind = encoders::EncoderKind::kTransformer;
  TaggerConfig parsed = TaggerConfig::FromConfig(config.ToConfig());
  EXPECT_EQ(parsed.ToConfig().Serialize(), config.ToConfig().Serialize());
  KeyValueConfig bad = config.ToConfig();
  bad.Set("head", "tree");
  EXPECT_THROW(TaggerConfig::FromConfig(bad), Error);
}

}  // namespace
}  // namespace xfer::xling_reg
