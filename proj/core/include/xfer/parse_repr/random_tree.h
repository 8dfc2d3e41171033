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

#ifndef XFER_PARSE_REPR_RANDOM_TREE_H_
#define XFER_PARSE_REPR_RANDOM_TREE_H_

#include <string>
#include <vector>

#include "xfer/common/random.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::parse_repr {

struct RandomTreeOptions {
  int min_tokens = 1;
  int max_tokens = 12;
  // Deepest non-root node; the root sits at depth 0.
  int max_depth = 4;
  int max_fertility = 3;
  // Chance that a free token starts a child span.
  double child_probability = 0.45;
  int vocabulary = 50;
  std::vector<std::string> intent_labels = {"CREATE_CALL",  "GET_CONTACT", "CREATE_REMINDER",
                                            "GET_WEATHER",  "SEND_MESSAGE", "GET_EVENT"};
  std::vector<std::string> slot_labels = {"TODO",       "CONTACT",       "METHOD_MESSAGE",
                                          "DATE_TIME",  "LOCATION",      "CONTENT_EXACT",
                                          "RECIPIENT",  "ATTENDEE_EVENT"};
};

// Draws a valid tree that the flat codec can represent:
//   - an intent nested under a non-root intent has no intent below it and
//     does not start where its outer intent starts;
//   - a slot spanning exactly its parent intent only occurs when that
//     intent in turn spans exactly its own parent slot.
// Tokens are "w<k>" with k below `vocabulary`.
ParseTree RandomTree(Rng& rng, const RandomTreeOptions& options = {});

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_RANDOM_TREE_H_
