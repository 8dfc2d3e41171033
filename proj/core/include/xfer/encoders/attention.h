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

#ifndef XFER_ENCODERS_ATTENTION_H_
#define XFER_ENCODERS_ATTENTION_H_

#include <string>

#include "xfer/nn/layers.h"

namespace xfer::encoders {

// Scaled dot-product self-attention with `heads` heads:
//   head_k = softmax(Q_k K_k^T / sqrt(d/heads)) V_k,  out = [head_1..head_h] W_O
// where Q = H W_Q, K = H W_K, V = H W_V. No masking: every token attends to
// every token, so the layer is permutation-equivariant.
class MultiHeadAttention {
 public:
  MultiHeadAttention() = default;
  MultiHeadAttention(nn::ParamStore& store, const std::string& name, int dim, int heads, Rng& rng);

  nn::Var Forward(const nn::Var& h) const;
  int dim() const { return dim_; }
  int heads() const { return heads_; }

 private:
  int dim_ = 0;
  int heads_ = 1;
  nn::Linear query_, key_, value_, output_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_ATTENTION_H_
