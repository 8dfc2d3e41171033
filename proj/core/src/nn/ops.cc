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
#include "xfer/nn/ops.h"

#include <cmath>
#include <string>

#include "xfer/common/error.h"

namespace xfer::nn {
namespace {

void CheckSameShape(const Var& a, const Var& b, const char* op) {
  Require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kShapeMismatch,
          std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
              " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

// Accumulates into input i if it wants a gradient.
template <typename Expr>
void Push(Node& self, size_t i, const Expr& g) {
  Node& in = *self.inputs[i];
  if (in.requires_grad) in.GradBuffer() += g;
}

}  // namespace

Var MatMul(const Var& a, const Var& b) {
  Require(a.cols() == b.rows(), ErrorCode::kShapeMismatch,
          "MatMul: inner dimensions " + std::to_string(a.cols()) + " vs " +
              std::to_string(b.rows()));
  return MakeResult(a.value() * b.value(), {a, b}, [](Node& self) {
    const Matrix& A = self.inputs[0]->value;
    const Matrix& B = self.inputs[1]->value;
    if (self.inputs[0]->requires_grad) Push(self, 0, self.grad * B.transpose());
    if (self.inputs[1]->requires_grad) Push(self, 1, A.transpose() * self.grad);
  });
}

Var Transpose(const Var& a) {
  return MakeResult(a.value().transpose(), {a},
                    [](Node& self) { Push(self, 0, self.grad.transpose()); });
}

Var Add(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Add");
  return MakeResult(a.value() + b.value(), {a, b}, [](Node& self) {
    Push(self, 0, self.grad);
    Push(self, 1, self.grad);
  });
}

Var Sub(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Sub");
  return MakeResult(a.value() - b.value(), {a, b}, [](Node& self) {
    Push(self, 0, self.grad);
    Push(self, 1, -self.grad);
  });
}

Var Mul(const Var& a, const Var& b) {
  CheckSameShape(a, b, "Mul");
  return MakeResult(a.value().cwiseProduct(b.value()), {a, b}, [](Node& self) {
    Push(self, 0, self.grad.cwiseProduct(self.inputs[1]->value));
    Push(self, 1, self.grad.cwiseProduct(self.inputs[0]->value));
  });
}

Var Scale(const Var& a, double s) {
  return MakeResult(a.value() * s, {a}, [s](Node& self) { Push(self, 0, self.grad * s); });
}

Var AddScalar(const Var& a, double s) {
  return MakeResult((a.value().array() + s).matrix(), {a},
                    [](Node& self) { Push(self, 0, self.grad); });
}

Var AddRow(const Var& a, const Var& row) {
  Require(row.rows() == 1 && row.cols() == a.cols(), ErrorCode::kShapeMismatch,
          "AddRow: row must be 1 x " + std::to_string(a.cols()));
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  return MakeResult(std::move(out), {a, row}, [](Node& self) {
    Push(self, 0, self.grad);
    Push(self, 1, self.grad.colwise().sum());
  });
}

Var MulColumn(const Var& a, const Var& column) {
  Require(column.cols() == 1 && column.rows() == a.rows(), ErrorCode::kShapeMismatch,
          "MulColumn: column must be " + std::to_string(a.rows()) + " x 1");
  Matrix out = a.value();
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) *= column.value()(i, 0);
  return MakeResult(std::move(out), {a, column}, [](Node& self) {
    const Matrix& A = self.inputs[0]->value;
    const Matrix& c = self.inputs[1]->value;
    if (self.inputs[0]->requires_grad) {
      Matrix g = self.grad;
      for (Eigen::Index i = 0; i < g.rows(); ++i) g.row(i) *= c(i, 0);
      Push(self, 0, g);
    }
    if (self.inputs[1]->requires_grad) {
      Push(self, 1, self.grad.cwiseProduct(A).rowwise().sum());
    }
  });
}

Var Tanh(const Var& a) {
  Matrix y = a.value().array().tanh().matrix();
  return MakeResult(y, {a}, [y](Node& self) {
    Push(self, 0, self.grad.cwiseProduct((1.0 - y.array().square()).matrix()));
  });
}

Var Sigmoid(const Var& a) {
  Matrix y = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  return MakeResult(y, {a}, [y](Node& self) {
    Push(self, 0, self.grad.cwiseProduct((y.array() * (1.0 - y.array())).matrix()));
  });
}

Var Relu(const Var& a) {
  Matrix y = a.value().cwiseMax(0.0);
  return MakeResult(y, {a}, [](Node& self) {
    const Matrix& x = self.inputs[0]->value;
    Push(self, 0, (x.array() > 0.0).select(self.grad, 0.0).matrix());
  });
}

Var Exp(const Var& a) {
  Matrix y = a.value().array().exp().matrix();
  return MakeResult(y, {a}, [y](Node& self) { Push(self, 0, self.grad.cwiseProduct(y)); });
}

Var Square(const Var& a) {
  return MakeResult(a.value().array().square().matrix(), {a}, [](Node& self) {
    Push(self, 0, 2.0 * self.grad.cwiseProduct(self.inputs[0]->value));
  });
}

namespace {

Matrix SoftmaxRowsValue(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = x.row(i).maxCoeff();
    y.row(i) = (x.row(i).array() - m).exp();
    y.row(i) /= y.row(i).sum();
  }
  return y;
}

Matrix LogSoftmaxRowsValue(const Matrix& x) {
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = x.row(i).maxCoeff();
    const double lse = m + std::log((x.row(i).array() - m).exp().sum());
    y.row(i) = x.row(i).array() - lse;
  }
  return y;
}

}  // namespace

Var SoftmaxRows(const Var& a) {
  Matrix y = SoftmaxRowsValue(a.value());
  return MakeResult(y, {a}, [y](Node& self) {
    Matrix g(y.rows(), y.cols());
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      const double dot = self.grad.row(i).dot(y.row(i));
      g.row(i) = y.row(i).array() * (self.grad.row(i).array() - dot);
    }
    Push(self, 0, g);
  });
}

Var LogSoftmaxRows(const Var& a) {
  Matrix y = LogSoftmaxRowsValue(a.value());
  return MakeResult(y, {a}, [y](Node& self) {
    Matrix g(y.rows(), y.cols());
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      const double total = self.grad.row(i).sum();
      g.row(i) = self.grad.row(i).array() - y.row(i).array().exp() * total;
    }
    Push(self, 0, g);
  });
}

Var LayerNormRows(const Var& a, const Var& gamma, const Var& beta, double eps) {
  const Eigen::Index n = a.rows(), c = a.cols();
  Require(gamma.rows() == 1 && gamma.cols() == c && beta.rows() == 1 && beta.cols() == c,
          ErrorCode::kShapeMismatch, "LayerNormRows: gamma/beta must be 1 x " + std::to_string(c));
  Matrix xhat(n, c);
  Vector inv_std(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = a.value().row(i).mean();
    const double var = (a.value().row(i).array() - mean).square().mean();
    inv_std(i) = 1.0 / std::sqrt(var + eps);
    xhat.row(i) = (a.value().row(i).array() - mean) * inv_std(i);
  }
  Matrix y = xhat;
  for (Eigen::Index i = 0; i < n; ++i) {
    y.row(i) = xhat.row(i).cwiseProduct(gamma.value().row(0)) + beta.value().row(0);
  }
  return MakeResult(std::move(y), {a, gamma, beta}, [xhat, inv_std](Node& self) {
    const Matrix& g = self.grad;
    const Matrix& gam = self.inputs[1]->value;
    const double c = static_cast<double>(g.cols());
    if (self.inputs[0]->requires_grad) {
      Matrix dx(g.rows(), g.cols());
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        Eigen::RowVectorXd dxhat = g.row(i).cwiseProduct(gam.row(0));
        const double s1 = dxhat.sum();
        const double s2 = dxhat.dot(xhat.row(i));
        dx.row(i) = inv_std(i) / c *
                    (c * dxhat.array() - s1 - xhat.row(i).array() * s2);
      }
      Push(self, 0, dx);
    }
    Push(self, 1, g.cwiseProduct(xhat).colwise().sum());
    Push(self, 2, g.colwise().sum());
  });
}

Var ConcatCols(std::span<const Var> parts) {
  Require(!parts.empty(), ErrorCode::kShapeMismatch, "ConcatCols: no inputs");
  const Eigen::Index n = parts[0].rows();
  Eigen::Index total = 0;
  for (const Var& p : parts) {
    Require(p.rows() == n, ErrorCode::kShapeMismatch, "ConcatCols: row count mismatch");
    total += p.cols();
  }
  Matrix out(n, total);
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const Var& p : parts) {
    out.middleCols(off, p.cols()) = p.value();
    offsets.push_back(off);
    off += p.cols();
  }
  return MakeResult(std::move(out), std::vector<Var>(parts.begin(), parts.end()),
                    [offsets](Node& self) {
                      for (size_t i = 0; i < self.inputs.size(); ++i) {
                        Push(self, i, self.grad.middleCols(offsets[i], self.inputs[i]->value.cols()));
                      }
                    });
}

Var ConcatRows(std::span<const Var> parts) {
  Require(!parts.empty(), ErrorCode::kShapeMismatch, "ConcatRows: no inputs");
  const Eigen::Index c = parts[0].cols();
  Eigen::Index total = 0;
  for (const Var& p : parts) {
    Require(p.cols() == c, ErrorCode::kShapeMismatch, "ConcatRows: column count mismatch");
    total += p.rows();
  }
  Matrix out(total, c);
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const Var& p : parts) {
    out.middleRows(off, p.rows()) = p.value();
    offsets.push_back(off);
    off += p.rows();
  }
  return MakeResult(std::move(out), std::vector<Var>(parts.begin(), parts.end()),
                    [offsets](Node& self) {
                      for (size_t i = 0; i < self.inputs.size(); ++i) {
                        Push(self, i, self.grad.middleRows(offsets[i], self.inputs[i]->value.rows()));
                      }
                    });
}

Var SliceRows(const Var& a, Eigen::Index start, Eigen::Index count) {
  Require(start >= 0 && count >= 0 && start + count <= a.rows(), ErrorCode::kShapeMismatch,
          "SliceRows out of range");
  return MakeResult(a.value().middleRows(start, count), {a}, [start, count](Node& self) {
    self.inputs[0]->GradBuffer().middleRows(start, count) += self.grad;
  });
}

Var SliceCols(const Var& a, Eigen::Index start, Eigen::Index count) {
  Require(start >= 0 && count >= 0 && start + count <= a.cols(), ErrorCode::kShapeMismatch,
          "SliceCols out of range");
  return MakeResult(a.value().middleCols(start, count), {a}, [start, count](Node& self) {
    self.inputs[0]->GradBuffer().middleCols(start, count) += self.grad;
  });
}

Var GatherRows(const Var& a, std::span<const int> indices) {
  Matrix out(static_cast<Eigen::Index>(indices.size()), a.cols());
  for (size_t i = 0; i < indices.size(); ++i) {
    Require(indices[i] >= 0 && indices[i] < a.rows(), ErrorCode::kShapeMismatch,
            "GatherRows: index " + std::to_string(indices[i]) + " out of range");
    out.row(static_cast<Eigen::Index>(i)) = a.value().row(indices[i]);
  }
  std::vector<int> idx(indices.begin(), indices.end());
  return MakeResult(std::move(out), {a}, [idx = std::move(idx)](Node& self) {
    Matrix& g = self.inputs[0]->GradBuffer();
    for (size_t i = 0; i < idx.size(); ++i) g.row(idx[i]) += self.grad.row(static_cast<Eigen::Index>(i));
  });
}

Var Im2Col(const Var& a, int kernel, int left_pad) {
  Require(kernel >= 1 && left_pad >= 0 && left_pad < kernel, ErrorCode::kInvalidArgument,
          "Im2Col: bad kernel/padding");
  const Eigen::Index n = a.rows(), c = a.cols();
  Matrix out = Matrix::Zero(n, kernel * c);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < kernel; ++k) {
      const Eigen::Index src = i - left_pad + k;
      if (src >= 0 && src < n) out.block(i, k * c, 1, c) = a.value().row(src);
    }
  }
  return MakeResult(std::move(out), {a}, [kernel, left_pad](Node& self) {
    Matrix& g = self.inputs[0]->GradBuffer();
    const Eigen::Index n = g.rows(), c = g.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int k = 0; k < kernel; ++k) {
        const Eigen::Index src = i - left_pad + k;
        if (src >= 0 && src < n) g.row(src) += self.grad.block(i, k * c, 1, c);
      }
    }
  });
}

Var Sum(const Var& a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return MakeResult(std::move(out), {a}, [](Node& self) {
    Matrix& g = self.inputs[0]->GradBuffer();
    g.array() += self.grad(0, 0);
  });
}

Var Mean(const Var& a) {
  const double count = static_cast<double>(a.value().size());
  Require(count > 0, ErrorCode::kShapeMismatch, "Mean of empty matrix");
  return Scale(Sum(a), 1.0 / count);
}

Var SumRows(const Var& a) {
  return MakeResult(a.value().colwise().sum(), {a}, [](Node& self) {
    Matrix& g = self.inputs[0]->GradBuffer();
    g.rowwise() += self.grad.row(0);
  });
}

Var Detach(const Var& a) { return Var(a.value(), false); }

Var CrossEntropy(const Var& logits, std::span<const int> targets) {
  Require(static_cast<Eigen::Index>(targets.size()) == logits.rows(), ErrorCode::kShapeMismatch,
          "CrossEntropy: " + std::to_string(targets.size()) + " targets for " +
              std::to_string(logits.rows()) + " rows");
  Matrix logp = LogSoftmaxRowsValue(logits.value());
  double total = 0.0;
  for (size_t i = 0; i < targets.size(); ++i) {
    Require(targets[i] >= 0 && targets[i] < logits.cols(), ErrorCode::kShapeMismatch,
            "CrossEntropy: target out of range");
    total -= logp(static_cast<Eigen::Index>(i), targets[i]);
  }
  std::vector<int> t(targets.begin(), targets.end());
  return MakeResult(Matrix::Constant(1, 1, total), {logits},
                    [logp, t = std::move(t)](Node& self) {
                      Matrix g = logp.array().exp().matrix();
                      for (size_t i = 0; i < t.size(); ++i) g(static_cast<Eigen::Index>(i), t[i]) -= 1.0;
                      Push(self, 0, g * self.grad(0, 0));
                    });
}

Var MeanSquaredError(const Var& a, const Var& b) { return Mean(Square(Sub(a, b))); }

Var Cosine(const Var& a, const Var& b) {
  Require(a.rows() == 1 && b.rows() == 1 && a.cols() == b.cols(), ErrorCode::kShapeMismatch,
          "Cosine expects two 1 x d rows");
  const double na = a.value().norm(), nb = b.value().norm();
  Require(na > 0.0 && nb > 0.0, ErrorCode::kDegenerateInput, "Cosine of a zero vector");
  const double dot = a.value().row(0).dot(b.value().row(0));
  const double cosv = dot / (na * nb);
  return MakeResult(Matrix::Constant(1, 1, cosv), {a, b}, [na, nb, cosv](Node& self) {
    const Matrix& A = self.inputs[0]->value;
    const Matrix& B = self.inputs[1]->value;
    const double g = self.grad(0, 0);
    Push(self, 0, g * (B / (na * nb) - cosv * A / (na * na)));
    Push(self, 1, g * (A / (na * nb) - cosv * B / (nb * nb)));
  });
}

}  // namespace xfer::nn
