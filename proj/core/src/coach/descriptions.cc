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
#include "xfer/coach/descriptions.h"

#include <fstream>
#include <set>

#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::coach {

std::vector<SlotDescription> LoadSlotDescriptions(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open slot descriptions " + path);
  std::vector<SlotDescription> out;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(number) + ": ";
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kFormatError, where + "expected 'TYPE<TAB>description words'");
    }
    SlotDescription d{std::string(Trim(line.substr(0, tab))), SplitWhitespace(line.substr(tab + 1))};
    if (d.type.empty() || d.words.empty()) {
      throw Error(ErrorCode::kFormatError, where + "empty slot type or description");
    }
    if (!seen.insert(d.type).second) {
      throw Error(ErrorCode::kFormatError, where + "duplicate slot type '" + d.type + "'");
    }
    out.push_back(std::move(d));
  }
  return out;
}

void SaveSlotDescriptions(const std::vector<SlotDescription>& descriptions,
                          const std::string& path) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  for (const SlotDescription& d : descriptions) out << d.type << '\t' << Join(d.words, " ") << '\n';
}

nn::Matrix DescriptionMatrix(const std::vector<SlotDescription>& descriptions,
                             const std::function<nn::Vector(const std::string&)>& embed) {
  nn::Matrix m;
  for (size_t t = 0; t < descriptions.size(); ++t) {
    nn::Vector row;
    for (const std::string& word : descriptions[t].words) {
      nn::Vector e = embed(word);
      row = row.size() == 0 ? e : nn::Vector(row + e);
    }
    Require(row.size() > 0, ErrorCode::kInvalidArgument,
            "slot type '" + descriptions[t].type + "' has no description words");
    if (t == 0) m.resize(static_cast<Eigen::Index>(descriptions.size()), row.size());
    Require(row.size() == m.cols(), ErrorCode::kShapeMismatch, "embedding sizes differ");
    m.row(static_cast<Eigen::Index>(t)) = row.transpose();
  }
  return m;
}

std::vector<int> TypeEntities(const std::vector<nn::Vector>& representations,
                              const nn::Matrix& descriptions) {
  std::vector<int> types;
  types.reserve(representations.size());
  for (const nn::Vector& r : representations) {
    Require(r.size() == descriptions.cols(), ErrorCode::kShapeMismatch,
            "span representation and description sizes differ");
    Eigen::VectorXd scores = descriptions * r;
    Eigen::Index best = 0;
    scores.maxCoeff(&best);
    types.push_back(static_cast<int>(best));
  }
  return types;
}

}  // namespace xfer::coach
