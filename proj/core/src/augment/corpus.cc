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
#include "xfer/augment/corpus.h"

#include <algorithm>

#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/common/strings.h"

namespace xfer::augment {

CorpusLevel ParseCorpusLevel(std::string_view text) {
  if (text == "domain") return CorpusLevel::kDomain;
  if (text == "entity") return CorpusLevel::kEntity;
  if (text == "task") return CorpusLevel::kTask;
  throw Error(ErrorCode::kInvalidArgument, "unknown corpus level '" + std::string(text) + "'");
}

int CountEntityHits(std::string_view sentence, const std::vector<std::string>& entities) {
  std::vector<std::string> tokens = SplitWhitespace(ToLower(sentence));
  std::vector<std::vector<std::string>> patterns;
  for (const auto& e : entities) {
    auto p = SplitWhitespace(ToLower(e));
    if (!p.empty()) patterns.push_back(std::move(p));
  }
  int hits = 0;
  size_t t = 0;
  while (t < tokens.size()) {
    size_t best = 0;
    for (const auto& p : patterns) {
      if (p.size() <= best || t + p.size() > tokens.size()) continue;
      if (std::equal(p.begin(), p.end(), tokens.begin() + t)) best = p.size();
    }
    if (best > 0) {
      ++hits;
      t += best;
    } else {
      ++t;
    }
  }
  return hits;
}

SelectionResult SelectCorpus(const std::vector<std::string>& sentences, const CorpusSpec& spec) {
  SelectionResult result;
  if (spec.level == CorpusLevel::kDomain) {
    result.sentences = sentences;
  } else {
    Require(!spec.entities.empty(), ErrorCode::kInvalidArgument,
            "entity and task level selection need an entity list");
    const int threshold = spec.level == CorpusLevel::kEntity ? spec.min_entities : 1;
    Require(threshold >= 1, ErrorCode::kInvalidArgument, "min_entities must be >= 1");
    for (const auto& s : sentences) {
      if (CountEntityHits(s, spec.entities) >= threshold) result.sentences.push_back(s);
    }
  }
  result.ratio = sentences.empty() ? 0.0
                                   : static_cast<double>(result.sentences.size()) /
                                         static_cast<double>(sentences.size());
  return result;
}

std::vector<std::string> IntegrateCorpora(const std::vector<std::string>& entity_corpus,
                                          const std::vector<std::string>& task_corpus, int factor,
                                          uint64_t seed) {
  Require(factor >= 1, ErrorCode::kInvalidArgument, "integration factor must be >= 1");
  std::vector<std::string> out = entity_corpus;
  for (int r = 0; r < factor; ++r) out.insert(out.end(), task_corpus.begin(), task_corpus.end());
  Rng rng(seed);
  rng.Shuffle(out);
  return out;
}

}  // namespace xfer::augment
