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
#include "xfer/nn/layers.h"

namespace xfer::nn {

Linear::Linear(ParamStore& store, const std::string& name, int in, int out, Rng& rng,
               bool bias) {
  weight_ = store.Create(name + ".weight", in, out, Init::kXavierUniform, rng);
  if (bias) bias_ = store.Create(name + ".bias", 1, out, Init::kZeros, rng);
}

Var Linear::Forward(const Var& x) const {
  Var y = MatMul(x, weight_);
  return bias_.defined() ? AddRow(y, bias_) : y;
}

Embedding::Embedding(ParamStore& store, const std::string& name, int vocab, int dim, Rng& rng) {
  table_ = store.Create(name + ".table", vocab, dim, Init::kNormal01, rng);
}

Embedding::Embedding(ParamStore& store, const std::string& name, Matrix table, bool trainable) {
  table_ = store.Adopt(name + ".table", std::move(table), trainable);
}

LayerNorm::LayerNorm(ParamStore& store, const std::string& name, int dim, Rng& rng) {
  gamma_ = store.Create(name + ".gamma", 1, dim, Init::kOnes, rng);
  beta_ = store.Create(name + ".beta", 1, dim, Init::kZeros, rng);
}

}  // namespace xfer::nn
