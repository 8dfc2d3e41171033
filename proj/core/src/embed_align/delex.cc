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
#include "xfer/embed_align/delex.h"

#include <regex>

namespace xfer::embed_align {
namespace {

struct Rule {
  std::regex pattern;
  const char* replacement;
};

const std::vector<Rule>& Rules() {
  static const auto flags = std::regex::ECMAScript | std::regex::icase;
  static const std::vector<Rule> rules = {
      {std::regex(R"(\d{1,2}(:\d{2})?(am|pm|a\.m\.|p\.m\.))", flags), "@time"},
      {std::regex(R"(\d{1,2}:\d{2})", flags), "@time"},
      {std::regex(R"(\d+([.,]\d+)?(st|nd|rd|th)?)", flags), "@number"},
      {std::regex(R"(am|pm|a\.m\.|p\.m\.)", flags), "@time-period"},
      {std::regex(R"(secs?|seconds?|mins?|minutes?|hrs?|hours?|days?|weeks?|months?|years?|)"
                  R"(segundos?|minutos?|horas?|días?|dias?|semanas?|mes|meses|años?|anos?)",
                  flags),
       "@duration"},
  };
  return rules;
}

}  // namespace

std::vector<std::string> Delexicalize(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    std::string replaced = token;
    if (token.empty() || token.front() != '@') {
      for (const Rule& rule : Rules()) {
        if (std::regex_match(token, rule.pattern)) {
          replaced = rule.replacement;
          break;
        }
      }
    }
    out.push_back(std::move(replaced));
  }
  return out;
}

}  // namespace xfer::embed_align
