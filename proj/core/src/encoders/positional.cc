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
#include "xfer/encoders/positional.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "xfer/common/error.h"
#include "xfer/nn/ops.h"

namespace xfer::encoders {

PositionalMode ParsePositionalMode(std::string_view text) {
  if (text == "none") return PositionalMode::kNone;
  if (text == "sinusoid") return PositionalMode::kSinusoid;
  if (text == "trainable") return PositionalMode::kTrainable;
  if (text == "frozen-pretrained") return PositionalMode::kFrozenPretrained;
  throw Error(ErrorCode::kInvalidArgument, "unknown positional mode '" + std::string(text) + "'");
}

std::string_view PositionalModeName(PositionalMode mode) {
  switch (mode) {
    case PositionalMode::kNone:
      return "none";
    case PositionalMode::kSinusoid:
      return "sinusoid";
    case PositionalMode::kTrainable:
      return "trainable";
    case PositionalMode::kFrozenPretrained:
      return "frozen-pretrained";
  }
  return "?";
}

nn::Matrix SinusoidTable(int rows, int dim) {
  nn::Matrix table(rows, dim);
  for (int pos = 0; pos < rows; ++pos) {
    for (int j = 0; j < dim; ++j) {
      const int pair = j / 2;
      const double angle = pos / std::pow(10000.0, 2.0 * pair / dim);
      table(pos, j) = j % 2 == 0 ? std::sin(angle) : std::cos(angle);
    }
  }
  return table;
}

nn::Matrix LoadPositionTable(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open position table " + path);
  std::string line;
  long rows = 0, dim = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> rows >> dim) || rows <= 0 ||
      dim <= 0) {
    throw Error(ErrorCode::kFormatError, path + ":1: expected header 'rows dim'");
  }
  nn::Matrix table(rows, dim);
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kFormatError,
                  path + ":" + std::to_string(r + 2) + ": missing row " + std::to_string(r));
    }
    std::istringstream fields(line);
    for (long c = 0; c < dim; ++c) {
      if (!(fields >> table(r, c))) {
        throw Error(ErrorCode::kFormatError, path + ":" + std::to_string(r + 2) + ": expected " +
                                                 std::to_string(dim) + " numbers");
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw Error(ErrorCode::kFormatError,
                  path + ":" + std::to_string(r + 2) + ": too many values");
    }
  }
  return table;
}

void SavePositionTable(const nn::Matrix& table, const std::string& path) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write " + path);
  out << table.rows() << ' ' << table.cols() << '\n';
  char buffer[32];
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", table(r, c));
      out << (c ? " " : "") << buffer;
    }
    out << '\n';
  }
}

PositionalEmbedding::PositionalEmbedding(nn::ParamStore& store, const std::string& name,
                                         PositionalMode mode, int max_length, int dim, Rng& rng,
                                         std::optional<nn::Matrix> pretrained)
    : mode_(mode), dim_(dim) {
  switch (mode) {
    case PositionalMode::kNone:
      break;
    case PositionalMode::kSinusoid:
      table_ = nn::Var(SinusoidTable(max_length, dim));
      break;
    case PositionalMode::kTrainable:
      table_ = store.Create(name + ".table", max_length, dim, nn::Init::kNormal01, rng);
      break;
    case PositionalMode::kFrozenPretrained:
      Require(pretrained.has_value(), ErrorCode::kMissingResource,
              "frozen-pretrained positions need a position table");
      Require(pretrained->cols() == dim, ErrorCode::kShapeMismatch,
              "position table has dim " + std::to_string(pretrained->cols()) + ", model uses " +
                  std::to_string(dim));
      table_ = store.Adopt(name + ".table", std::move(*pretrained), /*trainable=*/false);
      break;
  }
}

nn::Var PositionalEmbedding::Table(int n) const {
  if (mode_ == PositionalMode::kNone) return nn::Var(nn::Matrix::Zero(n, dim_));
  Require(n <= table_.rows(), ErrorCode::kShapeMismatch,
          "sequence of length " + std::to_string(n) + " exceeds position table (" +
              std::to_string(table_.rows()) + ")");
  return nn::SliceRows(table_, 0, n);
}

nn::Var PositionalEmbedding::Apply(const nn::Var& embedded) const {
  if (mode_ == PositionalMode::kNone) return embedded;
  return nn::Add(embedded, Table(static_cast<int>(embedded.rows())));
}

nn::Matrix PositionalEmbed(int n, PositionalMode mode, int dim, const nn::Matrix* pretrained,
                           uint64_t seed) {
  Rng rng(seed);
  nn::ParamStore scratch;
  std::optional<nn::Matrix> table;
  if (pretrained) table = *pretrained;
  PositionalEmbedding embedding(scratch, "pos", mode, std::max(n, 1), dim, rng, table);
  return embedding.Table(n).value();
}

}  // namespace xfer::encoders
