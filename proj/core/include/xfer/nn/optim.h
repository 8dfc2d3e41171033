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
#ifndef XFER_NN_OPTIM_H_
#define XFER_NN_OPTIM_H_

#include <vector>

#include "xfer/nn/autograd.h"

namespace xfer::nn {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip_norm = 0.0;  // global gradient-norm clip, disabled when 0
};

// Adam over a fixed parameter list. Only parameters in the list move, which
// is how losses are routed to parameter subsets.
class Adam {
 public:
  Adam(std::vector<Var> params, AdamOptions options);

  void Step();
  void ZeroGrad();
  double learning_rate() const { return options_.learning_rate; }
  void set_learning_rate(double lr) { options_.learning_rate = lr; }

 private:
  std::vector<Var> params_;
  AdamOptions options_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  long step_ = 0;
};

// Plain gradient descent step over `params`; used by smoke tests.
void SgdStep(const std::vector<Var>& params, double learning_rate);

}  // namespace xfer::nn

#endif  // XFER_NN_OPTIM_H_
