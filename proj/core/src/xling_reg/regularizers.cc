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
#include "xfer/xling_reg/regularizers.h"

#include <cmath>

#include "xfer/common/error.h"

namespace xfer::xling_reg {

using nn::Matrix;
using nn::Var;

Var InjectNoise(const Var& embedded, const NoiseConfig& config, Mode mode, Rng& rng) {
  Require(config.variance >= 0.0, ErrorCode::kInvalidArgument, "noise variance must be >= 0");
  if (mode == Mode::kEval || !config.enabled || config.variance == 0.0) return embedded;
  const double stddev = std::sqrt(config.variance);
  Matrix noise(embedded.rows(), embedded.cols());
  for (Eigen::Index r = 0; r < noise.rows(); ++r) {
    for (Eigen::Index c = 0; c < noise.cols(); ++c) noise(r, c) = rng.Normal(0.0, stddev);
  }
  return nn::Add(embedded, Var(std::move(noise)));
}

Var AttentionWeights(const Var& h, const Var& w) {
  Require(h.rows() >= 1, ErrorCode::kInvalidArgument, "attention pooling needs >= 1 row");
  Require(w.rows() == h.cols() && w.cols() == 1, ErrorCode::kShapeMismatch,
          "attention vector must be d x 1");
  return nn::SoftmaxRows(nn::Transpose(nn::MatMul(h, w)));
}

Var AttentionPool(const Var& h, const Var& w) { return nn::MatMul(AttentionWeights(h, w), h); }

AttentionPooling::AttentionPooling(nn::ParamStore& store, const std::string& name, int dim,
                                   Rng& rng)
    : w_(store.Create(name + ".w", dim, 1, nn::Init::kXavierUniform, rng)) {}

LvmHead::LvmHead(nn::ParamStore& store, const std::string& name, int input_dim, int latent_dim,
                 int classes, Rng& rng)
    : stats_(store, name + ".stats", input_dim, 2 * latent_dim, rng),
      out_(store, name + ".out", latent_dim, classes, rng),
      latent_dim_(latent_dim) {}

LatentGaussian LvmHead::Encode(const Var& h) const {
  Var stats = stats_.Forward(h);
  return {nn::SliceCols(stats, 0, latent_dim_), nn::SliceCols(stats, latent_dim_, latent_dim_)};
}

Var LvmHead::Sample(const LatentGaussian& q, Mode mode, Rng& rng) const {
  if (mode == Mode::kEval) return q.mean;
  Matrix eps(q.mean.rows(), q.mean.cols());
  for (Eigen::Index r = 0; r < eps.rows(); ++r) {
    for (Eigen::Index c = 0; c < eps.cols(); ++c) eps(r, c) = rng.Normal();
  }
  Var sigma = nn::Exp(nn::Scale(q.log_variance, 0.5));
  return nn::Add(q.mean, nn::Mul(sigma, Var(std::move(eps))));
}

Var LvmHead::Predict(const Var& h, Mode mode, Rng& rng) const {
  return nn::SoftmaxRows(Logits(Sample(Encode(h), mode, rng)));
}

Var LabelRegLoss(const Var& u_a, const Var& u_b, const Var& l_a, const Var& l_b) {
  return nn::Square(nn::Sub(nn::Cosine(u_a, u_b), nn::Cosine(l_a, l_b)));
}

Matrix UniformTarget(int rows, int classes) {
  return Matrix::Constant(rows, classes, 1.0 / classes);
}

Matrix OneHot(std::span<const int> gold, int classes) {
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(gold.size()), classes);
  for (size_t i = 0; i < gold.size(); ++i) {
    Require(gold[i] >= 0 && gold[i] < classes, ErrorCode::kShapeMismatch,
            "gold class out of range");
    y(static_cast<Eigen::Index>(i), gold[i]) = 1.0;
  }
  return y;
}

AlvmLosses ComputeAlvmLosses(const Var& z, const nn::Linear& adversary, std::span<const int> gold) {
  const int classes = adversary.out();
  Require(classes >= 2, ErrorCode::kInvalidArgument, "adversarial regularization needs >= 2 types");
  Require(static_cast<Eigen::Index>(gold.size()) == z.rows(), ErrorCode::kShapeMismatch,
          "one gold type per latent row required");
  const int n = static_cast<int>(z.rows());
  Var p_adversary = nn::SoftmaxRows(adversary.Forward(nn::Detach(z)));
  Var frozen = nn::MatMul(z, nn::Detach(adversary.weight()));
  if (adversary.bias().defined()) frozen = nn::AddRow(frozen, nn::Detach(adversary.bias()));
  Var p_latent = nn::SoftmaxRows(frozen);
  // Summing per-row means equals n times the overall mean.
  return {nn::Scale(nn::MeanSquaredError(p_adversary, Var(UniformTarget(n, classes))), n),
          nn::Scale(nn::MeanSquaredError(p_latent, Var(OneHot(gold, classes))), n)};
}

LossWeights ScheduledWeights(const WeightSchedule& schedule, int epoch) {
  Require(schedule.initial.alpha >= 0 && schedule.initial.beta >= 0, ErrorCode::kInvalidArgument,
          "loss weights must be >= 0");
  LossWeights weights = schedule.initial;
  const int decayed = epoch - schedule.constant_epochs + 1;
  if (decayed > 0) weights.alpha *= std::pow(schedule.alpha_decay, decayed);
  return weights;
}

}  // namespace xfer::xling_reg
