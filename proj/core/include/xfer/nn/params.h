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
#ifndef XFER_NN_PARAMS_H_
#define XFER_NN_PARAMS_H_

#include <map>
#include <string>
#include <vector>

#include "xfer/common/random.h"
#include "xfer/nn/autograd.h"

namespace xfer::nn {

enum class Init { kZeros, kOnes, kXavierUniform, kNormal01 };

// Named, long-lived parameters of a model. Names are hierarchical
// ("encoder.layer0.attn.wq") and iteration order is lexicographic, which
// makes checkpoints and optimizer state deterministic.
//
// Checkpoint archive (text, one tensor per record):
//   xfer-checkpoint 1
//   <count>
//   <name> <rows> <cols> <trainable 0|1>
//   <rows lines of cols space-separated values, %.17g>
class ParamStore {
 public:
  Var Create(const std::string& name, Eigen::Index rows, Eigen::Index cols, Init init, Rng& rng);
  // Adds an externally built tensor (e.g. a loaded embedding table).
  Var Adopt(const std::string& name, Matrix value, bool trainable);

  Var Get(const std::string& name) const;
  bool Has(const std::string& name) const { return params_.count(name) > 0; }

  // Parameters whose name starts with `prefix` (all when empty).
  std::vector<Var> Trainable(const std::string& prefix = "") const;
  std::vector<std::string> Names() const;
  size_t ScalarCount() const;

  void ZeroGrad();

  void Save(const std::string& path) const;
  // Overwrites values of existing parameters; names and shapes must match.
  void Load(const std::string& path);

  const std::map<std::string, Var>& all() const { return params_; }

 private:
  std::map<std::string, Var> params_;
};

}  // namespace xfer::nn

#endif  // XFER_NN_PARAMS_H_
