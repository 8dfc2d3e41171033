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

#ifndef XFER_COACH_TEMPLATES_H_
#define XFER_COACH_TEMPLATES_H_

#include <span>
#include <string>
#include <vector>

#include "xfer/common/random.h"
#include "xfer/nn/ops.h"

namespace xfer::coach {

// Utterance templates: every entity span collapses to one token naming a
// slot type. `usable` is false when the utterance has no entities or the
// inventory offers no alternative type; such utterances carry no template
// loss.
struct Templates {
  std::vector<std::string> right;
  std::vector<std::vector<std::string>> wrong;
  bool usable = false;
};

inline constexpr int kWrongTemplates = 2;

// The token standing for slot type `type` inside a template.
std::string TemplateToken(const std::string& type);

// Right template uses each span's gold type; each wrong template replaces
// every span's type with a uniformly drawn different type from `inventory`.
Templates MakeTemplates(std::span<const std::string> tokens, std::span<const std::string> labels,
                        std::span<const std::string> inventory, Rng& rng,
                        int wrong_count = kWrongTemplates);

struct TemplateLosses {
  nn::Var right;  // MSE(R_u, R_r) >= 0
  nn::Var wrong;  // -beta * sum_w MSE(R_u, R_w) <= 0
};

TemplateLosses ComputeTemplateLosses(const nn::Var& utterance, const nn::Var& right,
                                     std::span<const nn::Var> wrong, double beta);

}  // namespace xfer::coach

#endif  // XFER_COACH_TEMPLATES_H_
