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

#ifndef XFER_XLING_REG_REGULARIZERS_H_
#define XFER_XLING_REG_REGULARIZERS_H_

#include <span>
#include <string>

#include "xfer/common/random.h"
#include "xfer/nn/layers.h"

namespace xfer::xling_reg {

enum class Mode { kTrain, kEval };

struct NoiseConfig {
  double variance = 0.1;
  bool enabled = true;  // only ever applied in training mode
};

// Adds fresh N(0, variance) noise to every entry in training mode; the
// noise is a constant, so gradients pass through unchanged. Eval mode,
// disabled noise and zero variance return the input itself.
nn::Var InjectNoise(const nn::Var& embedded, const NoiseConfig& config, Mode mode, Rng& rng);

// a = softmax(H w) over the n rows of H (n x d, w is d x 1); returns the
// 1 x d row a^T H. AttentionWeights gives a as a 1 x n row.
nn::Var AttentionWeights(const nn::Var& h, const nn::Var& w);
nn::Var AttentionPool(const nn::Var& h, const nn::Var& w);

// Learned pooling vector wrapped as a module (parameter "<name>.w").
class AttentionPooling {
 public:
  AttentionPooling() = default;
  AttentionPooling(nn::ParamStore& store, const std::string& name, int dim, Rng& rng);
  nn::Var Forward(const nn::Var& h) const { return AttentionPool(h, w_); }
  const nn::Var& w() const { return w_; }

 private:
  nn::Var w_;
};

// Diagonal Gaussian per row: [mu, log sigma^2] from one linear layer.
struct LatentGaussian {
  nn::Var mean;
  nn::Var log_variance;
};

// Latent-variable prediction head: h -> q(z|h) -> softmax(W_g z).
// Training samples z = mu + sigma * eps (reparameterized, one sample);
// evaluation uses z = mu. Parameters "<name>.stats.*" and "<name>.out.*".
class LvmHead {
 public:
  LvmHead() = default;
  LvmHead(nn::ParamStore& store, const std::string& name, int input_dim, int latent_dim,
          int classes, Rng& rng);

  LatentGaussian Encode(const nn::Var& h) const;
  nn::Var Sample(const LatentGaussian& q, Mode mode, Rng& rng) const;
  nn::Var Logits(const nn::Var& z) const { return out_.Forward(z); }
  // Row-wise class distribution.
  nn::Var Predict(const nn::Var& h, Mode mode, Rng& rng) const;
  int latent_dim() const { return latent_dim_; }
  int classes() const { return out_.out(); }

 private:
  nn::Linear stats_;
  nn::Linear out_;
  int latent_dim_ = 0;
};

// (cos(u_a, u_b) - cos(l_a, l_b))^2 for 1 x d rows; throws
// kDegenerateInput on a zero vector.
nn::Var LabelRegLoss(const nn::Var& u_a, const nn::Var& u_b, const nn::Var& l_a,
                     const nn::Var& l_b);

struct AlvmLosses {
  nn::Var adversary;  // sum over rows of MSE(p, uniform); reaches only the adversary
  nn::Var latent;     // sum over rows of MSE(p, one-hot gold); never reaches the adversary
};

// p = softmax(adversary(z)) per row, n_s = adversary output size. The
// adversary term sees a detached z; the latent term sees detached adversary
// weights, so one optimizer over all parameters realizes the routing.
// Throws kInvalidArgument when n_s < 2 and kShapeMismatch on bad gold.
AlvmLosses ComputeAlvmLosses(const nn::Var& z, const nn::Linear& adversary,
                             std::span<const int> gold);

// Row-wise targets: n x n_s filled with 1/n_s, and one-hot rows.
nn::Matrix UniformTarget(int rows, int classes);
nn::Matrix OneHot(std::span<const int> gold, int classes);

struct LossWeights {
  double alpha = 1.0;
  double beta = 1.0;
};

struct WeightSchedule {
  int constant_epochs = 2;  // alpha = beta = initial weights while epoch < this
  double alpha_decay = 0.9;  // then alpha *= decay once per epoch
  LossWeights initial;
};

// Weights for a 0-based epoch.
LossWeights ScheduledWeights(const WeightSchedule& schedule, int epoch);

}  // namespace xfer::xling_reg

#endif  // XFER_XLING_REG_REGULARIZERS_H_
