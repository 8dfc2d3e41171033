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
#include "xfer/embed_align/procrustes.h"

#include <Eigen/SVD>

#include "xfer/common/error.h"

namespace xfer::embed_align {
namespace {

void CheckProblem(const AlignmentProblem& p) {
  Require(!p.pairs.empty(), ErrorCode::kDegenerateInput, "alignment needs at least one pair");
  Require(p.source.cols() == p.target.cols(), ErrorCode::kShapeMismatch,
          "source and target dimensions differ");
  for (const auto& [i, j] : p.pairs) {
    Require(i >= 0 && i < p.source.rows() && j >= 0 && j < p.target.rows(),
            ErrorCode::kShapeMismatch, "dictionary index out of range");
  }
}

}  // namespace

double TraceObjective(const AlignmentProblem& problem, const nn::Matrix& w) {
  double total = 0.0;
  for (const auto& [i, j] : problem.pairs) {
    total += (problem.source.row(i) * w).dot(problem.target.row(j));
  }
  return total;
}

nn::Matrix SolveMapping(const AlignmentProblem& problem) {
  CheckProblem(problem);
  const Eigen::Index d = problem.source.cols();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [i, j] : problem.pairs) {
    m += problem.source.row(i).transpose() * problem.target.row(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double OrthogonalityError(const nn::Matrix& w) {
  return (w.transpose() * w - nn::Matrix::Identity(w.cols(), w.cols())).norm();
}

double MeanCosineDistance(const AlignmentProblem& problem, const nn::Matrix& w) {
  CheckProblem(problem);
  double total = 0.0;
  for (const auto& [i, j] : problem.pairs) {
    Eigen::RowVectorXd mapped = problem.source.row(i) * w;
    const double denom = mapped.norm() * problem.target.row(j).norm();
    const double cosine = denom > 0.0 ? mapped.dot(problem.target.row(j)) / denom : 0.0;
    total += 1.0 - cosine;
  }
  return total / static_cast<double>(problem.pairs.size());
}

RefineResult Refine(const AlignmentProblem& problem, double threshold, int max_iterations) {
  CheckProblem(problem);
  Require(max_iterations >= 1, ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  RefineResult result;
  result.mapping = nn::Matrix::Identity(problem.source.cols(), problem.source.cols());
  AlignmentProblem current = problem;
  for (int it = 0; it < max_iterations; ++it) {
    nn::Matrix step = SolveMapping(current);
    result.mapping = result.mapping * step;
    current.source = problem.source * result.mapping;
    result.objective.push_back(TraceObjective(problem, result.mapping));
    result.mean_distance.push_back(MeanCosineDistance(problem, result.mapping));
    result.iterations = it + 1;
    if (result.mean_distance.back() < threshold) {
      result.converged = true;
      break;
    }
  }
  return result;
}

AlignmentProblem MakeProblem(const EmbeddingTable& source, const EmbeddingTable& target,
                             const SeedDictionary& dictionary, int* skipped) {
  AlignmentProblem problem;
  problem.source = source.vectors();
  problem.target = target.vectors();
  int missing = 0;
  for (const auto& [s, t] : dictionary) {
    auto i = source.Find(s);
    auto j = target.Find(t);
    if (i && j) {
      problem.pairs.emplace_back(*i, *j);
    } else {
      ++missing;
    }
  }
  if (skipped) *skipped = missing;
  return problem;
}

}  // namespace xfer::embed_align
