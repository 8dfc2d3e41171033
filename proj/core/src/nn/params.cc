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
#include "xfer/nn/params.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xfer/common/error.h"

namespace xfer::nn {

Var ParamStore::Create(const std::string& name, Eigen::Index rows, Eigen::Index cols, Init init,
                       Rng& rng) {
  Require(!Has(name), ErrorCode::kInvalidArgument, "duplicate parameter " + name);
  Matrix value(rows, cols);
  switch (init) {
    case Init::kZeros:
      value.setZero();
      break;
    case Init::kOnes:
      value.setOnes();
      break;
    case Init::kXavierUniform: {
      const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) value(i, j) = rng.Uniform(-limit, limit);
      break;
    }
    case Init::kNormal01:
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) value(i, j) = rng.Normal(0.0, 0.1);
      break;
  }
  return Adopt(name, std::move(value), true);
}

Var ParamStore::Adopt(const std::string& name, Matrix value, bool trainable) {
  Require(!Has(name), ErrorCode::kInvalidArgument, "duplicate parameter " + name);
  Var v(std::move(value), trainable);
  params_.emplace(name, v);
  return v;
}

Var ParamStore::Get(const std::string& name) const {
  auto it = params_.find(name);
  Require(it != params_.end(), ErrorCode::kMissingResource, "no parameter " + name);
  return it->second;
}

std::vector<Var> ParamStore::Trainable(const std::string& prefix) const {
  std::vector<Var> out;
  for (const auto& [name, v] : params_) {
    if (v.requires_grad() && name.compare(0, prefix.size(), prefix) == 0) out.push_back(v);
  }
  return out;
}

std::vector<std::string> ParamStore::Names() const {
  std::vector<std::string> out;
  for (const auto& [name, v] : params_) out.push_back(name);
  return out;
}

size_t ParamStore::ScalarCount() const {
  size_t total = 0;
  for (const auto& [name, v] : params_) total += static_cast<size_t>(v.value().size());
  return total;
}

void ParamStore::ZeroGrad() {
  for (auto& [name, v] : params_) v.ZeroGrad();
}

void ParamStore::Save(const std::string& path) const {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kMissingResource, "cannot write checkpoint " + path);
  out << "xfer-checkpoint 1\n" << params_.size() << "\n";
  char buf[32];
  for (const auto& [name, v] : params_) {
    out << name << ' ' << v.rows() << ' ' << v.cols() << ' ' << (v.requires_grad() ? 1 : 0)
        << '\n';
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", v.value()(i, j));
        if (j > 0) out << ' ';
        out << buf;
      }
      out << '\n';
    }
  }
}

void ParamStore::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open checkpoint " + path);
  std::string magic;
  int version = 0;
  size_t count = 0;
  in >> magic >> version >> count;
  Require(in.good() && magic == "xfer-checkpoint" && version == 1, ErrorCode::kFormatError,
          path + ": not an xfer checkpoint");
  for (size_t k = 0; k < count; ++k) {
    std::string name;
    Eigen::Index rows = 0, cols = 0;
    int trainable = 0;
    in >> name >> rows >> cols >> trainable;
    Require(in.good(), ErrorCode::kFormatError, path + ": truncated record " + std::to_string(k));
    Var target = Get(name);
    Require(target.rows() == rows && target.cols() == cols, ErrorCode::kShapeMismatch,
            path + ": shape mismatch for " + name);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) in >> target.mutable_value()(i, j);
    Require(!in.fail(), ErrorCode::kFormatError, path + ": bad values for " + name);
  }
}

}  // namespace xfer::nn
