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
// Encoder forward passes and CRF decoding by sequence length.

#include <benchmark/benchmark.h>

#include "xfer/common/random.h"
#include "xfer/encoders/crf.h"
#include "xfer/encoders/transformer.h"
#include "xfer/nn/params.h"

namespace {

xfer::nn::Matrix RandomMatrix(xfer::Rng& rng, int rows, int cols) {
  xfer::nn::Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal();
  return m;
}

// Arg 0: sequence length; arg 1: 1 for the order-reduced variant (no
// positions, kernel-3 convolution), 0 for the standard encoder.
void BM_TransformerForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  xfer::encoders::OrtConfig config;
  config.layers = 2;
  config.heads = 4;
  config.hidden_dim = 64;
  config.filter_dim = 128;
  if (state.range(1) == 1) {
    config.conv_kernel = 3;
    config.positional_mode = xfer::encoders::PositionalMode::kNone;
  } else {
    config.conv_kernel = 1;
    config.positional_mode = xfer::encoders::PositionalMode::kSinusoid;
  }
  xfer::Rng rng(1);
  xfer::nn::ParamStore store;
  xfer::encoders::TransformerEncoder encoder(store, "enc", config, rng);
  const xfer::nn::Var input(RandomMatrix(rng, n, config.hidden_dim));
  for (auto _ : state) benchmark::DoNotOptimize(encoder.Forward(input).value().data());
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TransformerForward)->ArgsProduct({{5, 10, 20, 40}, {0, 1}});

void BM_CrfViterbi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  xfer::Rng rng(2);
  xfer::nn::ParamStore store;
  xfer::encoders::Crf crf(store, "crf", 9);
  const xfer::nn::Matrix emissions = RandomMatrix(rng, n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(crf.Viterbi(emissions));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CrfViterbi)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
