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
// Single-utterance parse latency by length (bucket grid 5/10/20/40). One
// encoder pass and one slot-encoder pass per parse at every length.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "xfer/harness/latency.h"
#include "xfer/harness/synthetic.h"
#include "xfer/x2parser/model.h"

namespace {

const xfer::x2parser::X2Parser& Parser() {
  static const xfer::x2parser::X2Parser parser = [] {
    xfer::x2parser::X2Config config;
    config.slot_encoder.hidden_dim = 128;
    return xfer::x2parser::X2Parser::Build(config, xfer::harness::MakeParserToy(50, 1));
  }();
  return parser;
}

void BM_X2Parse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& parser = Parser();
  const std::vector<std::string> vocabulary = xfer::harness::ParserToyVocabulary();
  std::vector<std::string> tokens;
  for (int i = 0; i < n; ++i) tokens.push_back(vocabulary[(7 * i) % vocabulary.size()]);
  int decoder_passes = 0;
  for (auto _ : state) {
    const auto result = parser.Parse(tokens);
    decoder_passes = result.decoder_passes;
    benchmark::DoNotOptimize(result.flat);
  }
  state.counters["decoder_passes"] = decoder_passes;
}
BENCHMARK(BM_X2Parse)
    ->Arg(xfer::harness::kLatencyBuckets[0])
    ->Arg(xfer::harness::kLatencyBuckets[1])
    ->Arg(xfer::harness::kLatencyBuckets[2])
    ->Arg(xfer::harness::kLatencyBuckets[3])
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
