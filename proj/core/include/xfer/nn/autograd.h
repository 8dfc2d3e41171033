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
#ifndef XFER_NN_AUTOGRAD_H_
#define XFER_NN_AUTOGRAD_H_

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace xfer::nn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// One value in a dynamically built computation graph. Graph edges only point
// from a node to its inputs, so a graph is freed as soon as the last handle to
// its output goes away; parameters are long-lived leaves.
struct Node {
  Matrix value;
  Matrix grad;  // empty until something flows into it
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  // Reads this->grad and accumulates into inputs' grads.
  std::function<void(Node&)> backward;

  void AccumulateGrad(const Matrix& g);
  Matrix& GradBuffer();  // zero-initialized on first use
};

// Handle to a graph node. Copies share the node.
class Var {
 public:
  Var() = default;
  explicit Var(Matrix value, bool requires_grad = false);

  static Var Scalar(double v, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Matrix& value() const { return node_->value; }
  // Direct write access, for optimizers and test perturbations only.
  Matrix& mutable_value() { return node_->value; }
  const Matrix& grad() const { return node_->grad; }
  bool has_grad() const { return node_->grad.size() > 0; }
  void ZeroGrad();

  bool requires_grad() const { return node_ && node_->requires_grad; }
  void set_requires_grad(bool flag) { node_->requires_grad = flag; }

  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double item() const;

  const std::shared_ptr<Node>& node() const { return node_; }

 private:
  friend Var MakeResult(Matrix, std::vector<Var>, std::function<void(Node&)>);
  std::shared_ptr<Node> node_;
};

// Builds an op result: the backward closure and inputs are only retained when
// some input requires a gradient.
Var MakeResult(Matrix value, std::vector<Var> inputs, std::function<void(Node&)> backward);

// Reverse-mode sweep from a 1x1 output. Gradients accumulate into every
// reachable node that requires them (parameters keep theirs until zeroed).
void Backward(const Var& output);

}  // namespace xfer::nn

#endif  // XFER_NN_AUTOGRAD_H_
