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

#ifndef XFER_ENCODERS_CRF_H_
#define XFER_ENCODERS_CRF_H_

#include <span>
#include <string>
#include <vector>

#include "xfer/nn/params.h"

namespace xfer::encoders {

// Linear-chain CRF over L labels. A path y scores
//   start[y_0] + sum_t emit[t, y_t] + sum_t trans[y_{t-1}, y_t] + end[y_{n-1}].
struct CrfParams {
  nn::Var transitions;  // L x L, row = previous label
  nn::Var start;        // 1 x L
  nn::Var end;          // 1 x L
  int labels() const { return static_cast<int>(transitions.rows()); }
};

class Crf {
 public:
  Crf() = default;
  // Scores start at zero, so an untrained CRF decodes per-token argmax.
  Crf(nn::ParamStore& store, const std::string& name, int labels);
  explicit Crf(CrfParams params) : params_(std::move(params)) {}

  // -log p(gold | emissions) = log Z - score(gold); differentiable in the
  // emissions and all CRF scores.
  nn::Var NegativeLogLikelihood(const nn::Var& emissions, std::span<const int> gold) const;

  std::vector<int> Viterbi(const nn::Matrix& emissions) const;
  double LogPartition(const nn::Matrix& emissions) const;
  double PathScore(const nn::Matrix& emissions, std::span<const int> path) const;

  const CrfParams& params() const { return params_; }
  int labels() const { return params_.labels(); }

 private:
  CrfParams params_;
};

}  // namespace xfer::encoders

#endif  // XFER_ENCODERS_CRF_H_
