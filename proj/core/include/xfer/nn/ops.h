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
#ifndef XFER_NN_OPS_H_
#define XFER_NN_OPS_H_

#include <span>
#include <vector>

#include "xfer/nn/autograd.h"

// Differentiable operations on row-major matrices. Sequences are laid out one
// token per row.
namespace xfer::nn {

Var MatMul(const Var& a, const Var& b);
Var Transpose(const Var& a);
Var Add(const Var& a, const Var& b);
Var Sub(const Var& a, const Var& b);
Var Mul(const Var& a, const Var& b);  // elementwise
Var Scale(const Var& a, double s);
Var AddScalar(const Var& a, double s);
// a (n x c) + row (1 x c) broadcast over rows.
Var AddRow(const Var& a, const Var& row);
// a (n x c) * column (n x 1) broadcast over columns.
Var MulColumn(const Var& a, const Var& column);

Var Tanh(const Var& a);
Var Sigmoid(const Var& a);
Var Relu(const Var& a);
Var Exp(const Var& a);
Var Square(const Var& a);

Var SoftmaxRows(const Var& a);
Var LogSoftmaxRows(const Var& a);

// Row-wise layer normalization with affine gamma/beta (1 x c each).
Var LayerNormRows(const Var& a, const Var& gamma, const Var& beta, double eps);

Var ConcatCols(std::span<const Var> parts);
Var ConcatRows(std::span<const Var> parts);
Var SliceRows(const Var& a, Eigen::Index start, Eigen::Index count);
Var SliceCols(const Var& a, Eigen::Index start, Eigen::Index count);
// out.row(i) = a.row(indices[i]); gradients scatter-add back.
Var GatherRows(const Var& a, std::span<const int> indices);

// Convolution patches: row i holds rows i-left .. i-left+kernel-1 of `a`
// side by side (zero outside the sequence). Output is n x (kernel * c).
Var Im2Col(const Var& a, int kernel, int left_pad);

Var Sum(const Var& a);   // 1 x 1
Var Mean(const Var& a);  // 1 x 1
Var SumRows(const Var& a);  // column sums, 1 x c

// Cut the graph: same value, no gradient.
Var Detach(const Var& a);

// Sum over rows of -log softmax(logits)[row, target].
Var CrossEntropy(const Var& logits, std::span<const int> targets);
// mean((a - b)^2) over all entries.
Var MeanSquaredError(const Var& a, const Var& b);
// Cosine similarity of two row vectors (1 x d each). Both must be nonzero.
Var Cosine(const Var& a, const Var& b);

}  // namespace xfer::nn

#endif  // XFER_NN_OPS_H_
