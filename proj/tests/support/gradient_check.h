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

#ifndef XFER_TESTS_SUPPORT_GRADIENT_CHECK_H_
#define XFER_TESTS_SUPPORT_GRADIENT_CHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "xfer/nn/autograd.h"

namespace xfer::testing {

struct GradientCheckResult {
  double max_relative_error = 0.0;  // over all checked parameters
  std::string worst;                // "param[i] analytic=.. numeric=.."
  bool Passed(double tolerance) const { return max_relative_error <= tolerance; }
};

// Compares reverse-mode gradients of `loss` with central differences for
// every entry of every parameter. The error per parameter tensor is
// max|analytic - numeric| / max(max|analytic|, max|numeric|, floor), so a
// tensor whose true gradient is ~0 is judged on an absolute scale.
inline GradientCheckResult CheckGradients(const std::function<nn::Var()>& loss,
                                          std::vector<nn::Var> params, double step = 1e-5,
                                          double floor = 1e-6) {
  for (auto& p : params) p.ZeroGrad();
  nn::Var out = loss();
  nn::Backward(out);
  GradientCheckResult result;
  for (size_t k = 0; k < params.size(); ++k) {
    nn::Var& p = params[k];
    nn::Matrix analytic = p.has_grad() ? p.grad() : nn::Matrix::Zero(p.rows(), p.cols());
    nn::Matrix numeric(p.rows(), p.cols());
    for (Eigen::Index i = 0; i < p.value().size(); ++i) {
      double& x = p.mutable_value().data()[i];
      const double saved = x;
      x = saved + step;
      const double plus = loss().item();
      x = saved - step;
      const double minus = loss().item();
      x = saved;
      numeric.data()[i] = (plus - minus) / (2 * step);
    }
    const double scale = std::max({analytic.cwiseAbs().maxCoeff(),
                                   numeric.cwiseAbs().maxCoeff(), floor});
    const nn::Matrix delta = analytic - numeric;
    Eigen::Index worst_index = 0;
    const double diff =
        Eigen::Map<const Eigen::VectorXd>(delta.data(), delta.size()).cwiseAbs().maxCoeff(
            &worst_index);
    const double rel = diff / scale;
    if (rel >= result.max_relative_error) {
      result.max_relative_error = rel;
      result.worst = "param " + std::to_string(k) + "[" + std::to_string(worst_index) +
                     "] analytic=" + std::to_string(analytic.data()[worst_index]) +
                     " numeric=" + std::to_string(numeric.data()[worst_index]);
    }
  }
  for (auto& p : params) p.ZeroGrad();
  return result;
}

}  // namespace xfer::testing

#endif  // XFER_TESTS_SUPPORT_GRADIENT_CHECK_H_
