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

#ifndef XFER_ENCODERS_LSTM_H_
#define XFER_ENCODERS_LSTM_H_

#include <string>
#include <vector>

#include "xfer/nn/layers.h"

namespace xfer::encoders {

// Gate weights for one direction. Each gate reads [h_{t-1}, x_t]; the four
// gates (f, i, C~, o, in that column order) are stored side by side:
//   input  (in x 4H)      multiplies x_t
//   hidden (H x 4H)       multiplies h_{t-1}
//   bias   (1 x 4H)
struct RecurrentParams {
  nn::Var input;
  nn::Var hidden;
  nn::Var bias;
};

struct CellState {
  nn::Var h;  // 1 x H
  nn::Var c;  // 1 x H
};

// One cell step:
//   f = sigma(W_f [h, x] + b_f)   i = sigma(W_i [h, x] + b_i)
//   C~ = tanh(W_C [h, x] + b_C)   C' = f * C + i * C~
//   o = sigma(W_o [h, x] + b_o)   h' = o * tanh(C')
CellState LstmStep(const RecurrentParams& params, const nn::Var& x_row, const CellState& state);

class Lstm {
 public:
  Lstm() = default;
  Lstm(nn::ParamStore& store, const std::string& name, int input_dim, int hidden_dim,
       bool bidirectional, Rng& rng);

  // n x in -> n x H (or n x 2H, forward states then backward states).
  nn::Var Forward(const nn::Var& x) const;
  // Final states: forward direction's last h, concatenated with the backward
  // direction's first h when bidirectional. 1 x output_dim.
  nn::Var Summary(const nn::Var& x) const;

  int hidden_dim() const { return hidden_dim_; }
  int output_dim() const { return bidirectional_ ? 2 * hidden_dim_ : hidden_dim_; }
  bool bidirectional() const { return bidirectional_; }
  const RecurrentParams& forward_params() const { return forward_; }
  const RecurrentParams& backward_params() const { return backward_; }

 private:
  std::vector<nn::Var> Run(const RecurrentParams& params, const nn::Var& x, bool reverse) const;

  int hidden_dim_ = 0;
  bool bidirectional_ = false;
  RecurrentParams forward_;
  RecurrentParams backward_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_LSTM_H_
