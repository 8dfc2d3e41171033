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
#include "xfer/encoders/lstm.h"

#include "xfer/common/error.h"

namespace xfer::encoders {
namespace {

RecurrentParams MakeParams(nn::ParamStore& store, const std::string& name, int in, int hidden,
                           Rng& rng) {
  RecurrentParams p;
  p.input = store.Create(name + ".input", in, 4 * hidden, nn::Init::kXavierUniform, rng);
  p.hidden = store.Create(name + ".hidden", hidden, 4 * hidden, nn::Init::kXavierUniform, rng);
  p.bias = store.Create(name + ".bias", 1, 4 * hidden, nn::Init::kZeros, rng);
  return p;
}

CellState Step(const nn::Var& projected_x, const nn::Var& hidden_weights, const CellState& state) {
  const Eigen::Index h = hidden_weights.rows();
  nn::Var gates = nn::Add(projected_x, nn::MatMul(state.h, hidden_weights));
  nn::Var f = nn::Sigmoid(nn::SliceCols(gates, 0, h));
  nn::Var i = nn::Sigmoid(nn::SliceCols(gates, h, h));
  nn::Var candidate = nn::Tanh(nn::SliceCols(gates, 2 * h, h));
  nn::Var o = nn::Sigmoid(nn::SliceCols(gates, 3 * h, h));
  CellState next;
  next.c = nn::Add(nn::Mul(f, state.c), nn::Mul(i, candidate));
  next.h = nn::Mul(o, nn::Tanh(next.c));
  return next;
}

}  // namespace

CellState LstmStep(const RecurrentParams& params, const nn::Var& x_row, const CellState& state) {
  nn::Var projected = nn::AddRow(nn::MatMul(x_row, params.input), params.bias);
  return Step(projected, params.hidden, state);
}

Lstm::Lstm(nn::ParamStore& store, const std::string& name, int input_dim, int hidden_dim,
           bool bidirectional, Rng& rng)
    : hidden_dim_(hidden_dim), bidirectional_(bidirectional) {
  Require(input_dim > 0 && hidden_dim > 0, ErrorCode::kInvalidArgument,
          "LSTM dimensions must be positive");
  forward_ = MakeParams(store, name + ".fw", input_dim, hidden_dim, rng);
  if (bidirectional) backward_ = MakeParams(store, name + ".bw", input_dim, hidden_dim, rng);
}

std::vector<nn::Var> Lstm::Run(const RecurrentParams& params, const nn::Var& x,
                               bool reverse) const {
  const Eigen::Index n = x.rows();
  // Input projections for all steps at once.
  nn::Var projected = nn::AddRow(nn::MatMul(x, params.input), params.bias);
  CellState state{nn::Var(nn::Matrix::Zero(1, hidden_dim_)),
                  nn::Var(nn::Matrix::Zero(1, hidden_dim_))};
  std::vector<nn::Var> outputs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index t = reverse ? n - 1 - k : k;
    state = Step(nn::SliceRows(projected, t, 1), params.hidden, state);
    outputs[t] = state.h;
  }
  return outputs;
}

nn::Var Lstm::Forward(const nn::Var& x) const {
  Require(x.cols() == forward_.input.rows(), ErrorCode::kShapeMismatch,
          "LSTM input dim mismatch");
  Require(x.rows() >= 1, ErrorCode::kShapeMismatch, "LSTM needs at least one step");
  nn::Var fw = nn::ConcatRows(Run(forward_, x, false));
  if (!bidirectional_) return fw;
  nn::Var bw = nn::ConcatRows(Run(backward_, x, true));
  return nn::ConcatCols(std::vector<nn::Var>{fw, bw});
}

nn::Var Lstm::Summary(const nn::Var& x) const {
  std::vector<nn::Var> fw = Run(forward_, x, false);
  if (!bidirectional_) return fw.back();
  std::vector<nn::Var> bw = Run(backward_, x, true);
  return nn::ConcatCols(std::vector<nn::Var>{fw.back(), bw.front()});
}

}  // namespace xfer::encoders
