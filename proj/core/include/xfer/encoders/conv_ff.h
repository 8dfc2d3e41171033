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

#ifndef XFER_ENCODERS_CONV_FF_H_
#define XFER_ENCODERS_CONV_FF_H_

#include <string>

#include "xfer/nn/layers.h"

namespace xfer::encoders {

// Feed-forward sublayer whose first projection is a same-length 1-D
// convolution over the sequence:
//   out_i = ReLU(W_1 [g_{i-l} .. g_{i-l+h-1}] + b_1) W_2 + b_2
// with zero padding, l = floor((h-1)/2) tokens on the left and h-1-l on the
// right. For odd h the window is centred (radius floor(h/2)); an even h
// reaches one token further right than left. h = 1 is the ordinary
// position-wise feed-forward.
class ConvFeedForward {
 public:
  ConvFeedForward() = default;
  ConvFeedForward(nn::ParamStore& store, const std::string& name, int dim, int filter_dim,
                  int kernel, Rng& rng);

  nn::Var Forward(const nn::Var& g) const;
  int kernel() const { return kernel_; }
  int left_context() const { return (kernel_ - 1) / 2; }
  int right_context() const { return kernel_ - 1 - left_context(); }

 private:
  int kernel_ = 1;
  nn::Linear conv_;
  nn::Linear project_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_CONV_FF_H_
