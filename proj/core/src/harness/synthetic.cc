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
#include "xfer/harness/synthetic.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/common/strings.h"

namespace xfer::harness {

using parse_repr::NodeKind;
using parse_repr::ParseNode;
using parse_repr::ParseTree;

namespace {

// ---------------------------------------------------------------- parser toy

const std::map<std::string, std::vector<std::string>>& SlotValues() {
  static const std::map<std::string, std::vector<std::string>> values = {
      {"ARTIST", {"adele", "drake", "queen"}},      {"SONG", {"hello", "yesterday", "thunder"}},
      {"CONTENT", {"lunch", "dinner", "meeting"}},  {"LOCATION", {"paris", "london", "tokyo"}},
      {"DATE", {"today", "tomorrow", "monday"}},    {"CONTACT", {"john", "mary", "alex"}},
      {"RELATION", {"mom", "dad", "boss"}},
  };
  return values;
}

const std::vector<std::string>& FunctionWords() {
  static const std::vector<std::string> words = {
      "the", "a",    "to",   "me", "my", "in",   "for", "by", "about", "please", "now",
      "some", "on", "at",   "is", "what", "will", "it",  "of", "with",  "hey"};
  return words;
}

// Appends words and (optionally) a node spanning them.
class TreeBuilder {
 public:
  int size() const { return static_cast<int>(tokens_.size()); }
  void Words(std::initializer_list<std::string> words) {
    for (const auto& w : words) tokens_.push_back(w);
  }
  void Word(const std::string& w) { tokens_.push_back(w); }
  ParseNode Slot(const std::string& type, Rng& rng) {
    const auto& values = SlotValues().at(type);
    const int at = size();
    Word(values[rng.Below(values.size())]);
    return {NodeKind::kSlot, type, {at, at}, {}};
  }
  ParseTree Finish(const std::string& intent, std::vector<ParseNode> children) {
    return {tokens_, {NodeKind::kIntent, intent, {0, size() - 1}, std::move(children)}};
  }

 private:
  std::vector<std::string> tokens_;
};

ParseTree PlayMusic(Rng& rng) {
  TreeBuilder b;
  std::vector<ParseNode> children;
  b.Word(rng.Bernoulli(0.5) ? "play" : "put");
  const int form = static_cast<int>(rng.Below(3));
  if (form != 1) {
    if (rng.Bernoulli(0.5)) b.Word("some");
    children.push_back(b.Slot("SONG", rng));
  }
  if (form != 0) {
    b.Word("by");
    children.push_back(b.Slot("ARTIST", rng));
  }
  if (rng.Bernoulli(0.3)) b.Word("please");
  return b.Finish("PLAY_MUSIC", std::move(children));
}

// RECIPIENT either names a contact or wraps a nested GET_CONTACT intent.
ParseNode Recipient(TreeBuilder& b, Rng& rng) {
  const int begin = b.size();
  if (rng.Bernoulli(0.5)) {
    ParseNode contact = b.Slot("CONTACT", rng);
    return {NodeKind::kSlot, "RECIPIENT", contact.span, {}};
  }
  b.Word("my");
  ParseNode relation = b.Slot("RELATION", rng);
  const parse_repr::Span span{begin, b.size() - 1};
  ParseNode nested{NodeKind::kIntent, "GET_CONTACT", span, {relation}};
  return {NodeKind::kSlot, "RECIPIENT", span, {nested}};
}

ParseTree SendMessage(Rng& rng) {
  TreeBuilder b;
  std::vector<ParseNode> children;
  b.Word(rng.Bernoulli(0.5) ? "send" : "text");
  b.Word("to");
  children.push_back(Recipient(b, rng));
  if (rng.Bernoulli(0.7)) {
    b.Word("about");
    children.push_back(b.Slot("CONTENT", rng));
  }
  return b.Finish("SEND_MESSAGE", std::move(children));
}

ParseTree GetWeather(Rng& rng) {
  TreeBuilder b;
  std::vector<ParseNode> children;
  if (rng.Bernoulli(0.3)) b.Words({"what", "is", "the"});
  b.Word(rng.Bernoulli(0.5) ? "weather" : "forecast");
  if (rng.Bernoulli(0.7)) {
    b.Word("in");
    children.push_back(b.Slot("LOCATION", rng));
  }
  if (rng.Bernoulli(0.6)) {
    b.Word(rng.Bernoulli(0.5) ? "for" : "on");
    children.push_back(b.Slot("DATE", rng));
  }
  return b.Finish("GET_WEATHER", std::move(children));
}

ParseTree GetContact(Rng& rng) {
  TreeBuilder b;
  std::vector<ParseNode> children;
  if (rng.Bernoulli(0.5)) {
    b.Words({"who", "is", "my"});
    children.push_back(b.Slot("RELATION", rng));
  } else {
    b.Word("find");
    children.push_back(b.Slot("CONTACT", rng));
    if (rng.Bernoulli(0.3)) b.Word("now");
  }
  return b.Finish("GET_CONTACT", std::move(children));
}

// ---------------------------------------------------------------- coach toy

struct Domain {
  std::vector<std::string> templates;  // "{type}" marks a slot
};

const Domain& WeatherDomain() {
  static const Domain d{{"what is the weather in {city} on {date}",
                         "will it rain at {time} in {country}",
                         "forecast for {city} at {time}",
                         "find food place near {city}",
                         "is it cold in {country} {date}",
                         "weather on {date} at {time} please",
                         "will the sky be {condition} in {region}",
                         "is it {condition} in {city} {date}"}};
  return d;
}

const Domain& MusicDomain() {
  static const Domain d{{"play {song} by {artist}",
                         "add {album} to my {genre} list",
                         "play some {genre} music",
                         "who sang {song} from {album}",
                         "put on {artist} now",
                         "i like the {genre} song {song}",
                         "add {song} to {playlist}",
                         "play {artist} with the {instrument}"}};
  return d;
}

const Domain& RestaurantDomain() {
  static const Domain d{{"book a table at {restaurant} in {city}",
                         "reserve {restaurant} for {date}",
                         "i want dinner at {restaurant}",
                         "find {restaurant} near {city} on {date}",
                         "is {restaurant} open {date}",
                         "table for two in {city} at {restaurant}"}};
  return d;
}

TaggedSequence Realize(const std::string& pattern,
                       const std::map<std::string, std::vector<std::vector<std::string>>>& values,
                       Rng& rng) {
  TaggedSequence out;
  for (const std::string& piece : SplitWhitespace(pattern)) {
    if (piece.size() > 2 && piece.front() == '{' && piece.back() == '}') {
      const std::string type = piece.substr(1, piece.size() - 2);
      const auto& options = values.at(type);
      const auto& value = options[rng.Below(options.size())];
      for (size_t k = 0; k < value.size(); ++k) {
        out.tokens.push_back(value[k]);
        out.labels.push_back((k == 0 ? "B-" : "I-") + type);
      }
    } else {
      out.tokens.push_back(piece);
      out.labels.push_back("O");
    }
  }
  return out;
}

std::vector<TaggedSequence> Sample(const Domain& domain,
                                   const std::map<std::string, std::vector<std::vector<std::string>>>& values,
                                   int count, Rng& rng) {
  std::vector<TaggedSequence> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(Realize(domain.templates[rng.Below(domain.templates.size())], values, rng));
  }
  return out;
}

nn::Vector RandomUnit(int dim, Rng& rng) {
  nn::Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.Normal();
  return v / v.norm();
}

}  // namespace

std::vector<ParseTree> MakeParserToy(int count, uint64_t seed) {
  Require(count >= 0, ErrorCode::kInvalidArgument, "count must be >= 0");
  Rng rng(seed);
  std::vector<ParseTree> trees;
  for (int i = 0; i < count; ++i) {
    switch (rng.Below(4)) {
      case 0:
        trees.push_back(PlayMusic(rng));
        break;
      case 1:
        trees.push_back(SendMessage(rng));
        break;
      case 2:
        trees.push_back(GetWeather(rng));
        break;
      default:
        trees.push_back(GetContact(rng));
        break;
    }
  }
  return trees;
}

std::vector<std::string> ParserToyVocabulary() {
  std::vector<std::string> words = {"play", "put", "send", "text", "weather", "forecast",
                                    "who",  "find"};
  for (const auto& [type, values] : SlotValues()) words.insert(words.end(), values.begin(), values.end());
  words.insert(words.end(), FunctionWords().begin(), FunctionWords().end());
  return words;
}

CoachToy MakeCoachToy(uint64_t seed, const CoachToyOptions& options) {
  Require(options.dim >= 2, ErrorCode::kInvalidArgument, "dim must be >= 2");
  Rng rng(seed);
  CoachToy toy;
  toy.unseen_type = "restaurant";
  toy.source_descriptions = {
      {"city", {"city", "town"}},       {"date", {"day", "date"}},
      {"time", {"hour", "clock"}},      {"country", {"country", "nation"}},
      {"artist", {"singer", "artist"}}, {"song", {"song", "track"}},
      {"album", {"album", "record"}},   {"genre", {"music", "style"}},
      {"condition", {"sky", "condition"}}, {"region", {"area", "region"}},
      {"playlist", {"playlist", "collection"}}, {"instrument", {"instrument", "sound"}},
  };
  toy.target_descriptions = {{"city", {"city", "town"}},
                             {"date", {"day", "date"}},
                             {"restaurant", {"food", "place"}}};

  // Word vectors: every template and description word is random; entity
  // values cluster around their type's description direction.
  std::map<std::string, nn::Vector> vectors;
  auto word_vector = [&](const std::string& word) -> const nn::Vector& {
    auto it = vectors.find(word);
    if (it == vectors.end()) it = vectors.emplace(word, RandomUnit(options.dim, rng)).first;
    return it->second;
  };
  std::map<std::string, nn::Vector> concept_vectors;
  auto concept_of = [&](const coach::SlotDescription& d) {
    nn::Vector sum = nn::Vector::Zero(options.dim);
    for (const std::string& w : d.words) sum += word_vector(w);
    return nn::Vector(sum / sum.norm());
  };
  for (const coach::SlotDescription& d : toy.source_descriptions) concept_vectors[d.type] = concept_of(d);
  // Like unrelated words in real embedding spaces, the unseen type's
  // description should not point at another target type's description;
  // redraw its words until every such cosine is at most 0.3.
  const coach::SlotDescription& unseen = toy.target_descriptions.back();
  for (int attempt = 0;; ++attempt) {
    const nn::Vector candidate = concept_of(unseen);
    bool separated = true;
    for (const coach::SlotDescription& d : toy.target_descriptions) {
      if (d.type != unseen.type && std::abs(candidate.dot(concept_vectors.at(d.type))) > 0.3) {
        separated = false;
      }
    }
    if (separated || attempt == 1000) {
      concept_vectors[unseen.type] = candidate;
      break;
    }
    for (const std::string& w : unseen.words) vectors.erase(w);
  }
  for (const Domain* domain : {&WeatherDomain(), &MusicDomain(), &RestaurantDomain()}) {
    for (const std::string& pattern : domain->templates) {
      for (const std::string& piece : SplitWhitespace(pattern)) {
        if (piece.front() != '{') word_vector(piece);
      }
    }
  }
  const std::map<std::string, int> value_count = {
      {"city", 8},   {"date", 6},  {"time", 6},  {"country", 6}, {"artist", 8},
      {"song", 8},   {"album", 6}, {"genre", 6}, {"restaurant", 8},
      {"condition", 6}, {"region", 6}, {"playlist", 6}, {"instrument", 6}};
  std::map<std::string, std::vector<std::vector<std::string>>> values;
  for (const auto& [type, count] : value_count) {
    for (int v = 0; v < count; ++v) {
      // Every third value has two tokens, so I- labels occur.
      std::vector<std::string> value = {type + "_" + std::to_string(v)};
      if (v % 3 == 2) value.push_back(type + "_" + std::to_string(v) + "b");
      for (const std::string& token : value) {
        nn::Vector e = concept_vectors.at(type) + options.value_noise * RandomUnit(options.dim, rng);
        vectors[token] = e / e.norm();
      }
      values[type].push_back(value);
    }
  }

  std::vector<std::string> words;
  nn::Matrix table(static_cast<Eigen::Index>(vectors.size()), options.dim);
  for (const auto& [word, v] : vectors) {
    table.row(static_cast<Eigen::Index>(words.size())) = v.transpose();
    words.push_back(word);
  }
  toy.embeddings = embed_align::EmbeddingTable(std::move(words), std::move(table));

  toy.source_train = Sample(WeatherDomain(), values, options.source_per_domain, rng);
  std::vector<TaggedSequence> music = Sample(MusicDomain(), values, options.source_per_domain, rng);
  toy.source_train.insert(toy.source_train.end(), music.begin(), music.end());
  rng.Shuffle(toy.source_train);
  toy.target_train = Sample(RestaurantDomain(), values, options.target_train, rng);
  toy.target_test = Sample(RestaurantDomain(), values, options.target_test, rng);
  return toy;
}

}  // namespace xfer::harness
