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
#ifndef XFER_NN_LAYERS_H_
#define XFER_NN_LAYERS_H_

#include <span>
#include <string>

#include "xfer/nn/ops.h"
#include "xfer/nn/params.h"

namespace xfer::nn {

// y = x W + b, x is n x in.
class Linear {
 public:
  Linear() = default;
  Linear(ParamStore& store, const std::string& name, int in, int out, Rng& rng, bool bias = true);

  Var Forward(const Var& x) const;
  const Var& weight() const { return weight_; }
  const Var& bias() const { return bias_; }
  int in() const { return static_cast<int>(weight_.rows()); }
  int out() const { return static_cast<int>(weight_.cols()); }

 private:
  Var weight_;
  Var bias_;
};

// Token-id lookup into a (vocab x dim) table.
class Embedding {
 public:
  Embedding() = default;
  Embedding(ParamStore& store, const std::string& name, int vocab, int dim, Rng& rng);
  // Wraps a pretrained table; frozen tables get no gradient.
  Embedding(ParamStore& store, const std::string& name, Matrix table, bool trainable);

  Var Forward(std::span<const int> ids) const { return GatherRows(table_, ids); }
  const Var& table() const { return table_; }
  int dim() const { return static_cast<int>(table_.cols()); }

 private:
  Var table_;
};

class LayerNorm {
 public:
  static constexpr double kEpsilon = 1e-5;

  LayerNorm() = default;
  LayerNorm(ParamStore& store, const std::string& name, int dim, Rng& rng);
  Var Forward(const Var& x) const { return LayerNormRows(x, gamma_, beta_, kEpsilon); }

 private:
  Var gamma_;
  Var beta_;
};

}  // namespace xfer::nn

#endif  // XFER_NN_LAYERS_H_
