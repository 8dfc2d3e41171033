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

#ifndef XFER_EMBED_ALIGN_PROCRUSTES_H_
#define XFER_EMBED_ALIGN_PROCRUSTES_H_

#include <utility>
#include <vector>

#include "xfer/embed_align/embeddings.h"

namespace xfer::embed_align {

// Orthogonal mapping between two embedding spaces. Rows of X (source) and
// Z (target) are word vectors; the binary dictionary D is stored sparsely as
// (source row, target row) pairs. The mapped source is X W.
struct AlignmentProblem {
  nn::Matrix source;                       // X, n_s x d
  nn::Matrix target;                       // Z, n_t x d
  std::vector<std::pair<int, int>> pairs;  // D_ij = 1
};

// Tr(X W Z^T D^T) = sum over pairs of x_i W z_j^T.
double TraceObjective(const AlignmentProblem& problem, const nn::Matrix& w);

// W = U V^T from the SVD U S V^T of X^T D Z: the orthogonal W maximizing
// the trace objective. Throws kDegenerateInput without pairs and
// kShapeMismatch on dimension or index errors.
nn::Matrix SolveMapping(const AlignmentProblem& problem);

// ||W^T W - I||_F.
double OrthogonalityError(const nn::Matrix& w);

// Mean over pairs of 1 - cos(x_i W, z_j).
double MeanCosineDistance(const AlignmentProblem& problem, const nn::Matrix& w);

struct RefineResult {
  nn::Matrix mapping;                   // accumulated W
  std::vector<double> objective;        // trace objective after each iteration
  std::vector<double> mean_distance;    // seed-pair distance after each iteration
  int iterations = 0;
  bool converged = false;               // distance fell below the threshold
};

inline constexpr double kDefaultRefineThreshold = 0.25;

// Repeats the solve on the currently mapped source (W_total <- W_total W_k)
// until the mean seed-pair cosine distance drops below `threshold` or
// `max_iterations` run out. Non-convergence is reported in the result.
// With a fixed dictionary the first solve is already optimal, so later
// iterations keep the objective unchanged.
RefineResult Refine(const AlignmentProblem& problem, double threshold, int max_iterations);

// Builds the problem for two tables and a word-pair dictionary; pairs whose
// words are missing from either table are skipped (counted in `skipped`).
AlignmentProblem MakeProblem(const EmbeddingTable& source, const EmbeddingTable& target,
                             const SeedDictionary& dictionary, int* skipped = nullptr);

}  // namespace xfer::embed_align

#endif  // XFER_EMBED_ALIGN_PROCRUSTES_H_
