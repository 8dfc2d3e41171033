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
#include "xfer/encoders/crf.h"

#include <cmath>
#include <limits>

#include "xfer/common/error.h"

namespace xfer::encoders {
namespace {

using nn::Matrix;

double LogSumExp(const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

struct Lattice {
  Matrix alpha;  // n x L
  Matrix beta;   // n x L
  double log_z = 0.0;
};

Lattice ForwardBackward(const Matrix& emit, const Matrix& trans, const Matrix& start,
                        const Matrix& end) {
  const Eigen::Index n = emit.rows(), L = emit.cols();
  Lattice lat;
  lat.alpha.resize(n, L);
  lat.beta.resize(n, L);
  lat.alpha.row(0) = start.row(0) + emit.row(0);
  Eigen::RowVectorXd scratch(L);
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index j = 0; j < L; ++j) {
      scratch = lat.alpha.row(t - 1) + trans.col(j).transpose();
      lat.alpha(t, j) = LogSumExp(scratch) + emit(t, j);
    }
  }
  lat.beta.row(n - 1) = end.row(0);
  for (Eigen::Index t = n - 2; t >= 0; --t) {
    for (Eigen::Index i = 0; i < L; ++i) {
      scratch = trans.row(i) + emit.row(t + 1) + lat.beta.row(t + 1);
      lat.beta(t, i) = LogSumExp(scratch);
    }
  }
  scratch = lat.alpha.row(n - 1) + end.row(0);
  lat.log_z = LogSumExp(scratch);
  return lat;
}

void CheckEmissions(const Matrix& emit, int labels) {
  Require(emit.rows() >= 1, ErrorCode::kShapeMismatch, "CRF needs at least one position");
  Require(emit.cols() == labels, ErrorCode::kShapeMismatch,
          "CRF emissions have " + std::to_string(emit.cols()) + " labels, expected " +
              std::to_string(labels));
}

}  // namespace

Crf::Crf(nn::ParamStore& store, const std::string& name, int labels) {
  Require(labels >= 1, ErrorCode::kInvalidArgument, "CRF needs at least one label");
  Rng unused(0);
  params_.transitions = store.Create(name + ".transitions", labels, labels, nn::Init::kZeros, unused);
  params_.start = store.Create(name + ".start", 1, labels, nn::Init::kZeros, unused);
  params_.end = store.Create(name + ".end", 1, labels, nn::Init::kZeros, unused);
}

double Crf::PathScore(const Matrix& emit, std::span<const int> path) const {
  CheckEmissions(emit, labels());
  Require(static_cast<Eigen::Index>(path.size()) == emit.rows(), ErrorCode::kShapeMismatch,
          "CRF path length mismatch");
  const Matrix& trans = params_.transitions.value();
  double score = params_.start.value()(0, path[0]) + params_.end.value()(0, path.back());
  for (size_t t = 0; t < path.size(); ++t) {
    Require(path[t] >= 0 && path[t] < labels(), ErrorCode::kShapeMismatch,
            "CRF label out of range");
    score += emit(static_cast<Eigen::Index>(t), path[t]);
    if (t > 0) score += trans(path[t - 1], path[t]);
  }
  return score;
}

double Crf::LogPartition(const Matrix& emit) const {
  CheckEmissions(emit, labels());
  return ForwardBackward(emit, params_.transitions.value(), params_.start.value(),
                         params_.end.value())
      .log_z;
}

std::vector<int> Crf::Viterbi(const Matrix& emit) const {
  CheckEmissions(emit, labels());
  const Eigen::Index n = emit.rows(), L = emit.cols();
  const Matrix& trans = params_.transitions.value();
  Matrix score(n, L);
  Eigen::MatrixXi back(n, L);
  score.row(0) = params_.start.value().row(0) + emit.row(0);
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index j = 0; j < L; ++j) {
      Eigen::Index best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < L; ++i) {
        const double s = score(t - 1, i) + trans(i, j);
        if (s > best_score) {  // ties keep the lower label index
          best_score = s;
          best = i;
        }
      }
      score(t, j) = best_score + emit(t, j);
      back(t, j) = static_cast<int>(best);
    }
  }
  Eigen::RowVectorXd last = score.row(n - 1) + params_.end.value().row(0);
  Eigen::Index label = 0;
  last.maxCoeff(&label);
  std::vector<int> path(n);
  path[n - 1] = static_cast<int>(label);
  for (Eigen::Index t = n - 1; t > 0; --t) path[t - 1] = back(t, path[t]);
  return path;
}

nn::Var Crf::NegativeLogLikelihood(const nn::Var& emissions, std::span<const int> gold) const {
  const Matrix& emit = emissions.value();
  const double gold_score = PathScore(emit, gold);
  Lattice lat = ForwardBackward(emit, params_.transitions.value(), params_.start.value(),
                                params_.end.value());
  std::vector<int> path(gold.begin(), gold.end());
  return nn::MakeResult(
      Matrix::Constant(1, 1, lat.log_z - gold_score),
      {emissions, params_.transitions, params_.start, params_.end},
      [lat = std::move(lat), path = std::move(path)](nn::Node& self) {
        const double g = self.grad(0, 0);
        const Matrix& emit = self.inputs[0]->value;
        const Matrix& trans = self.inputs[1]->value;
        const Eigen::Index n = emit.rows(), L = emit.cols();
        // Unary marginals: p(y_t = j) = exp(alpha + beta - log Z).
        Matrix unary = (lat.alpha + lat.beta).array() - lat.log_z;
        unary = unary.array().exp().matrix();
        if (self.inputs[0]->requires_grad) {
          Matrix d = unary;
          for (Eigen::Index t = 0; t < n; ++t) d(t, path[t]) -= 1.0;
          self.inputs[0]->GradBuffer() += g * d;
        }
        if (self.inputs[1]->requires_grad) {
          Matrix d = Matrix::Zero(L, L);
          for (Eigen::Index t = 0; t + 1 < n; ++t) {
            for (Eigen::Index i = 0; i < L; ++i) {
              for (Eigen::Index j = 0; j < L; ++j) {
                d(i, j) += std::exp(lat.alpha(t, i) + trans(i, j) + emit(t + 1, j) +
                                    lat.beta(t + 1, j) - lat.log_z);
              }
            }
            d(path[t], path[t + 1]) -= 1.0;
          }
          self.inputs[1]->GradBuffer() += g * d;
        }
        if (self.inputs[2]->requires_grad) {
          Matrix d = unary.row(0);
          d(0, path[0]) -= 1.0;
          self.inputs[2]->GradBuffer() += g * d;
        }
        if (self.inputs[3]->requires_grad) {
          Matrix d = unary.row(n - 1);
          d(0, path[n - 1]) -= 1.0;
          self.inputs[3]->GradBuffer() += g * d;
        }
      });
}

}  // namespace xfer::encoders
