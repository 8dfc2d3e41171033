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

#ifndef XFER_AUGMENT_CORPUS_H_
#define XFER_AUGMENT_CORPUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xfer::augment {

enum class CorpusLevel { kDomain, kEntity, kTask };

CorpusLevel ParseCorpusLevel(std::string_view text);  // "domain" | "entity" | "task"

struct CorpusSpec {
  CorpusLevel level = CorpusLevel::kDomain;
  std::vector<std::string> entities;  // surface forms, may be multi-word
  int min_entities = 2;               // entity level threshold
  int upsample = 2;                   // task corpus multiplicity on integration
};

struct SelectionResult {
  std::vector<std::string> sentences;
  double ratio = 0.0;  // kept / input, 0 for empty input
};

// Number of entity-list hits in a whitespace-tokenized sentence: greedy
// longest match from the left, case-insensitive, non-overlapping.
int CountEntityHits(std::string_view sentence, const std::vector<std::string>& entities);

// domain: every sentence; entity: sentences with >= min_entities hits;
// task: sentences with >= 1 hit. Entity and task levels need a nonempty
// entity list (kInvalidArgument).
SelectionResult SelectCorpus(const std::vector<std::string>& sentences, const CorpusSpec& spec);

// entity corpus plus `factor` copies of the task corpus, shuffled with
// `seed`. factor must be >= 1.
std::vector<std::string> IntegrateCorpora(const std::vector<std::string>& entity_corpus,
                                          const std::vector<std::string>& task_corpus, int factor,
                                          uint64_t seed);

}  // namespace xfer::augment

#endif  // XFER_AUGMENT_CORPUS_H_
