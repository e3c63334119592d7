// Copyright 2026 The qprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <span>

#include "qprep/types.hpp"

namespace qprep {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(std::size_t n_params, AdamConfig config);

  /// params -= lr * mhat / (sqrt(vhat) + eps)
  void step(std::span<double> params, std::span<const double> grad);

  int steps_taken() const { return t_; }

 private:
  AdamConfig config_;
  RVec m_, v_;
  int t_ = 0;
};

/// f(x, grad) returns the objective and writes its gradient.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct MinimizeResult {
  RVec x;
  double value = 0.0;
  int iterations = 0;
};

/// Limited-memory BFGS with a backtracking Armijo line search. The returned
/// value never exceeds f(x0).
MinimizeResult lbfgs_minimize(const Objective& f, RVec x0, int max_iterations, int memory = 8,
                              double gradient_tol = 1e-12);

}  // namespace qprep
