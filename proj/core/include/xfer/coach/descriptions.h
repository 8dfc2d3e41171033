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

#ifndef XFER_COACH_DESCRIPTIONS_H_
#define XFER_COACH_DESCRIPTIONS_H_

#include <functional>
#include <string>
#include <vector>

#include "xfer/nn/autograd.h"

namespace xfer::coach {

// Natural-language description of one slot type.
struct SlotDescription {
  std::string type;
  std::vector<std::string> words;

  friend bool operator==(const SlotDescription&, const SlotDescription&) = default;
};

// File format: one "TYPE<TAB>description words" line per type; blank lines
// and '#' comments skipped. Throws kFormatError (with line) on a missing
// tab, empty description or duplicate type.
std::vector<SlotDescription> LoadSlotDescriptions(const std::string& path);
void SaveSlotDescriptions(const std::vector<SlotDescription>& descriptions,
                          const std::string& path);

// M_desc: row t is the sum of the embeddings of type t's description words.
// `embed` maps a word to its 1 x d embedding.
nn::Matrix DescriptionMatrix(const std::vector<SlotDescription>& descriptions,
                             const std::function<nn::Vector(const std::string&)>& embed);

// argmax_t (M r_k)_t for each 1 x d span representation (ties -> lower t).
std::vector<int> TypeEntities(const std::vector<nn::Vector>& representations,
                              const nn::Matrix& descriptions);

}  // namespace xfer::coach

#endif  // XFER_COACH_DESCRIPTIONS_H_
