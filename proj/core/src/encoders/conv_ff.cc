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
#include "xfer/encoders/conv_ff.h"

#include "xfer/common/error.h"

namespace xfer::encoders {

ConvFeedForward::ConvFeedForward(nn::ParamStore& store, const std::string& name, int dim,
                                 int filter_dim, int kernel, Rng& rng)
    : kernel_(kernel) {
  Require(kernel >= 1, ErrorCode::kInvalidArgument, "convolution kernel must be >= 1");
  conv_ = nn::Linear(store, name + ".conv", kernel * dim, filter_dim, rng);
  project_ = nn::Linear(store, name + ".proj", filter_dim, dim, rng);
}

nn::Var ConvFeedForward::Forward(const nn::Var& g) const {
  nn::Var patches = kernel_ == 1 ? g : nn::Im2Col(g, kernel_, left_context());
  return project_.Forward(nn::Relu(conv_.Forward(patches)));
}

}  // namespace xfer::encoders
