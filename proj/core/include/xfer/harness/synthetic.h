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

#ifndef XFER_HARNESS_SYNTHETIC_H_
#define XFER_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "xfer/coach/descriptions.h"
#include "xfer/embed_align/embeddings.h"
#include "xfer/harness/bio.h"
#include "xfer/parse_repr/parse_tree.h"

namespace xfer::harness {

// Compositional toy grammar for parser smoke runs: 50 words, intents
// PLAY_MUSIC / SEND_MESSAGE / GET_WEATHER / GET_CONTACT, slots ARTIST, SONG,
// RECIPIENT, CONTENT, LOCATION, DATE, CONTACT, RELATION. A RECIPIENT may hold
// a nested GET_CONTACT intent with its own RELATION slot, so trees reach
// depth 3 (root = 0) and tokens carry up to two slot labels.
std::vector<parse_repr::ParseTree> MakeParserToy(int count, uint64_t seed);
// All words the toy grammar can emit.
std::vector<std::string> ParserToyVocabulary();

// Cross-domain slot-filling toy. Two source domains (weather: city, date,
// time, country, condition, region; music: artist, song, album, genre,
// playlist, instrument) and a target domain
// (city, date, restaurant) whose "restaurant" type never occurs in the
// source data and is described by words that do ("food place"). The
// embedding table plays the part of pretrained vectors: an entity value lies
// near the normalized sum of its type's description-word vectors.
struct CoachToy {
  embed_align::EmbeddingTable embeddings;
  std::vector<coach::SlotDescription> source_descriptions;
  std::vector<coach::SlotDescription> target_descriptions;
  std::vector<TaggedSequence> source_train;
  std::vector<TaggedSequence> target_train;  // pool for few-shot adaptation
  std::vector<TaggedSequence> target_test;
  std::string unseen_type;
};

struct CoachToyOptions {
  int dim = 8;
  int source_per_domain = 150;
  int target_train = 100;
  int target_test = 100;
  double value_noise = 0.35;  // spread of entity vectors around their type
};

CoachToy MakeCoachToy(uint64_t seed, const CoachToyOptions& options = {});

}  // namespace xfer::harness

#endif  // XFER_HARNESS_SYNTHETIC_H_
