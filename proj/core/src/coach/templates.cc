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
#include "xfer/coach/templates.h"

#include "xfer/common/error.h"
#include "xfer/harness/bio.h"

namespace xfer::coach {

std::string TemplateToken(const std::string& type) { return "<" + type + ">"; }

namespace {

std::vector<std::string> Render(std::span<const std::string> tokens,
                                const std::vector<harness::LabeledSpan>& spans,
                                const std::vector<std::string>& types) {
  std::vector<std::string> out;
  size_t next = 0;
  for (int i = 0; i < static_cast<int>(tokens.size());) {
    if (next < spans.size() && spans[next].begin == i) {
      out.push_back(TemplateToken(types[next]));
      i = spans[next].end + 1;
      ++next;
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

Templates MakeTemplates(std::span<const std::string> tokens, std::span<const std::string> labels,
                        std::span<const std::string> inventory, Rng& rng, int wrong_count) {
  Require(tokens.size() == labels.size(), ErrorCode::kShapeMismatch,
          "tokens and labels differ in length");
  const std::vector<harness::LabeledSpan> spans = harness::ExtractSpans(labels);
  Templates templates;
  if (spans.empty() || inventory.size() < 2) {
    templates.right.assign(tokens.begin(), tokens.end());
    templates.wrong.assign(wrong_count, templates.right);
    return templates;
  }
  std::vector<std::string> gold;
  for (const auto& span : spans) gold.push_back(span.type);
  templates.right = Render(tokens, spans, gold);
  for (int w = 0; w < wrong_count; ++w) {
    std::vector<std::string> types;
    for (const std::string& type : gold) {
      std::vector<std::string> others;
      for (const std::string& candidate : inventory) {
        if (candidate != type) others.push_back(candidate);
      }
      types.push_back(others[rng.Below(others.size())]);
    }
    templates.wrong.push_back(Render(tokens, spans, types));
  }
  templates.usable = true;
  return templates;
}

TemplateLosses ComputeTemplateLosses(const nn::Var& utterance, const nn::Var& right,
                                     std::span<const nn::Var> wrong, double beta) {
  Require(beta >= 0.0, ErrorCode::kInvalidArgument, "beta must be >= 0");
  TemplateLosses losses;
  losses.right = nn::MeanSquaredError(utterance, right);
  nn::Var push;
  for (const nn::Var& w : wrong) {
    nn::Var term = nn::MeanSquaredError(utterance, w);
    push = push.defined() ? nn::Add(push, term) : term;
  }
  losses.wrong = push.defined() ? nn::Scale(push, -beta) : nn::Var::Scalar(0.0);
  return losses;
}

}  // namespace xfer::coach
