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
#include <cstdio>
#include <filesystem>
#include <vector>

#include "gradient_check.h"
#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/nn/layers.h"
#include "xfer/nn/ops.h"
#include "xfer/nn/optim.h"
#include "xfer/nn/params.h"

namespace xfer::nn {
namespace {

using xfer::testing::CheckGradients;

Var RandomVar(Rng& rng, int rows, int cols, bool grad = true) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal();
  return Var(m, grad);
}

constexpr double kTolerance = 1e-4;

TEST(AutogradTest, ChainRuleOnScalars) {
  Var x = Var::Scalar(3.0, true);
  Var y = Mul(x, x);  // x^2
  Var z = Add(y, Scale(x, 2.0));
  Backward(z);
  EXPECT_DOUBLE_EQ(z.item(), 15.0);
  EXPECT_DOUBLE_EQ(x.grad()(0, 0), 8.0);
}

TEST(AutogradTest, SharedSubexpressionAccumulates) {
  Var x = Var::Scalar(2.0, true);
  Var a = Tanh(x);
  Var z = Add(a, a);
  Backward(z);
  EXPECT_NEAR(x.grad()(0, 0), 2 * (1 - std::pow(std::tanh(2.0), 2)), 1e-12);
}

TEST(AutogradTest, NoGraphWithoutRequiresGrad) {
  Var x(Matrix::Ones(2, 2));
  Var y = Tanh(x);
  EXPECT_FALSE(y.requires_grad());
  EXPECT_TRUE(y.node()->inputs.empty());
}

TEST(OpsGradientTest, ElementwiseAndMatrixOps) {
  Rng rng(1);
  Var a = RandomVar(rng, 3, 4), b = RandomVar(rng, 4, 2), c = RandomVar(rng, 3, 4);
  Var row = RandomVar(rng, 1, 4), col = RandomVar(rng, 3, 1);
  auto loss = [&] {
    Var h = Add(Mul(Tanh(a), Sigmoid(c)), Sub(Exp(Scale(c, 0.3)), Square(a)));
    h = MulColumn(AddRow(h, row), col);
    return Sum(MatMul(h, b));
  };
  auto result = CheckGradients(loss, {a, b, c, row, col});
  EXPECT_TRUE(result.Passed(kTolerance)) << result.worst;
}

TEST(OpsGradientTest, SoftmaxLayerNormAndShapes) {
  Rng rng(2);
  Var a = RandomVar(rng, 4, 5), gamma = RandomVar(rng, 1, 5), beta = RandomVar(rng, 1, 5);
  Var w = RandomVar(rng, 5, 5);
  auto loss = [&] {
    Var n = LayerNormRows(a, gamma, beta, 1e-5);
    Var s = SoftmaxRows(MatMul(n, w));
    std::vector<Var> parts{SliceCols(s, 0, 2), SliceRows(LogSoftmaxRows(a), 1, 3)};
    Var cat = ConcatRows(std::vector<Var>{SliceRows(parts[0], 0, 3), SliceCols(parts[1], 0, 2)});
    std::vector<int> idx{2, 0, 2, 1};
    Var g = GatherRows(ConcatCols(std::vector<Var>{SliceRows(cat, 0, 5), Transpose(SliceRows(w, 0, 2))}), idx);
    return Mean(Mul(g, g));
  };
  auto result = CheckGradients(loss, {a, gamma, beta, w});
  EXPECT_TRUE(result.Passed(kTolerance)) << result.worst;
}

TEST(OpsGradientTest, Im2ColReluAndLosses) {
  Rng rng(3);
  Var x = RandomVar(rng, 5, 3), w = RandomVar(rng, 9, 4), target = RandomVar(rng, 5, 4, false);
  auto loss = [&] {
    Var h = Relu(MatMul(Im2Col(x, 3, 1), w));
    std::vector<int> gold{0, 3, 1, 1, 2};
    return Add(CrossEntropy(h, gold), MeanSquaredError(h, target));
  };
  auto result = CheckGradients(loss, {x, w});
  EXPECT_TRUE(result.Passed(kTolerance)) << result.worst;
}

TEST(OpsGradientTest, Cosine) {
  Rng rng(4);
  Var a = RandomVar(rng, 1, 6), b = RandomVar(rng, 1, 6);
  auto loss = [&] { return Square(Cosine(a, b)); };
  auto result = CheckGradients(loss, {a, b});
  EXPECT_TRUE(result.Passed(kTolerance)) << result.worst;
}

TEST(OpsTest, CosineRejectsZeroVector) {
  Var a(Matrix::Zero(1, 3)), b(Matrix::Ones(1, 3));
  EXPECT_THROW(Cosine(a, b), Error);
}

TEST(OpsTest, Im2ColPadsWithZeros) {
  Matrix m(3, 1);
  m << 1, 2, 3;
  Matrix patches = Im2Col(Var(m), 3, 1).value();
  Matrix expected(3, 3);
  expected << 0, 1, 2, 1, 2, 3, 2, 3, 0;
  EXPECT_EQ(patches, expected);
  // Even kernel: one more token on the right than on the left.
  Matrix even = Im2Col(Var(m), 2, 0).value();
  Matrix expected_even(3, 2);
  expected_even << 1, 2, 2, 3, 3, 0;
  EXPECT_EQ(even, expected_even);
}

TEST(OpsTest, CrossEntropyOfUniformIsLogL) {
  Var logits(Matrix::Zero(3, 7));
  std::vector<int> gold{0, 4, 6};
  EXPECT_NEAR(CrossEntropy(logits, gold).item(), 3 * std::log(7.0), 1e-12);
}

TEST(OpsTest, DetachBlocksGradient) {
  Var x = Var::Scalar(1.5, true);
  Var y = Add(Detach(Mul(x, x)), x);
  Backward(y);
  EXPECT_DOUBLE_EQ(x.grad()(0, 0), 1.0);
}

TEST(ParamStoreTest, CheckpointRoundTrip) {
  Rng rng(9);
  ParamStore store;
  store.Create("b.weight", 3, 2, Init::kXavierUniform, rng);
  store.Create("a.bias", 1, 2, Init::kNormal01, rng);
  store.Adopt("c.table", Matrix::Constant(2, 2, 0.1), false);
  const auto path = std::filesystem::temp_directory_path() / "xfer_params_test.ckpt";
  store.Save(path.string());

  ParamStore other;
  Rng rng2(10);
  other.Create("b.weight", 3, 2, Init::kZeros, rng2);
  other.Create("a.bias", 1, 2, Init::kZeros, rng2);
  other.Adopt("c.table", Matrix::Zero(2, 2), false);
  other.Load(path.string());
  for (const auto& name : store.Names()) {
    EXPECT_EQ(store.Get(name).value(), other.Get(name).value()) << name;
  }
  EXPECT_EQ(store.Trainable().size(), 2u);
  std::filesystem::remove(path);
}

TEST(OptimTest, AdamMinimizesQuadratic) {
  Var x(Matrix::Constant(1, 3, 5.0), true);
  Adam adam({x}, {.learning_rate = 0.1});
  for (int i = 0; i < 500; ++i) {
    adam.ZeroGrad();
    Var loss = Sum(Square(AddScalar(x, -1.0)));
    Backward(loss);
    adam.Step();
  }
  EXPECT_NEAR(x.value()(0, 0), 1.0, 1e-3);
}

TEST(LayersTest, LinearAndLayerNormShapes) {
  Rng rng(5);
  ParamStore store;
  Linear linear(store, "lin", 4, 3, rng);
  LayerNorm norm(store, "ln", 3, rng);
  Var y = norm.Forward(linear.Forward(RandomVar(rng, 6, 4, false)));
  EXPECT_EQ(y.rows(), 6);
  EXPECT_EQ(y.cols(), 3);
  for (int r = 0; r < 6; ++r) EXPECT_NEAR(y.value().row(r).mean(), 0.0, 1e-9);
}

}  // namespace
}  // namespace xfer::nn
