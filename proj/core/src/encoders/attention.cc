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
#include "xfer/encoders/attention.h"

#include <cmath>
#include <vector>

#include "xfer/common/error.h"

namespace xfer::encoders {

MultiHeadAttention::MultiHeadAttention(nn::ParamStore& store, const std::string& name, int dim,
                                       int heads, Rng& rng)
    : dim_(dim), heads_(heads) {
  Require(heads > 0 && dim > 0 && dim % heads == 0, ErrorCode::kInvalidArgument,
          "attention dim " + std::to_string(dim) + " not divisible by " + std::to_string(heads) +
              " heads");
  query_ = nn::Linear(store, name + ".wq", dim, dim, rng);
  key_ = nn::Linear(store, name + ".wk", dim, dim, rng);
  value_ = nn::Linear(store, name + ".wv", dim, dim, rng);
  output_ = nn::Linear(store, name + ".wo", dim, dim, rng);
}

nn::Var MultiHeadAttention::Forward(const nn::Var& h) const {
  Require(h.cols() == dim_, ErrorCode::kShapeMismatch,
          "attention expects dim " + std::to_string(dim_) + ", got " + std::to_string(h.cols()));
  const int head_dim = dim_ / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  nn::Var q = query_.Forward(h), k = key_.Forward(h), v = value_.Forward(h);
  std::vector<nn::Var> outputs;
  outputs.reserve(heads_);
  for (int head = 0; head < heads_; ++head) {
    const int offset = head * head_dim;
    nn::Var qh = nn::SliceCols(q, offset, head_dim);
    nn::Var kh = nn::SliceCols(k, offset, head_dim);
    nn::Var vh = nn::SliceCols(v, offset, head_dim);
    nn::Var weights = nn::SoftmaxRows(nn::Scale(nn::MatMul(qh, nn::Transpose(kh)), scale));
    outputs.push_back(nn::MatMul(weights, vh));
  }
  nn::Var joined = heads_ == 1 ? outputs[0] : nn::ConcatCols(outputs);
  return output_.Forward(joined);
}

}  // namespace xfer::encoders
