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

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// A scalar loss of the Z-expectation vector <Z_0..Z_{m-1}>. Implementations
/// return the loss and write dL/d<Z_j> into `grad`.
using ExpectationLoss =
    std::function<double(std::span<const double> expectations, std::span<double> grad)>;

struct GradientResult {
  double value = 0.0;
  RVec gradient;
};

/// Reverse-mode (adjoint) gradient of loss(<Z_j>) with respect to the
/// circuit's RX/RY/RZ angles. `params` replaces the bound angles, in order.
/// Throws std::invalid_argument when params.size() != parameter_count().
GradientResult circuit_gradient(const Circuit& circuit, std::span<const double> params,
                                const Statevector& input, int n_observables,
                                const ExpectationLoss& loss);

/// Low-level adjoint pass for f = <psi|H|psi> given psi = U(theta)|input>
/// and lambda = H|psi>. Returns df/dtheta for every parametric gate, and,
/// when `input_cotangent` is non-null, fills it with U^dagger H U |input> so
/// that df = 2 Re<cotangent|d input>.
RVec adjoint_backprop(const Circuit& circuit, Statevector output, CVec lambda,
                      CVec* input_cotangent = nullptr);

/// Gradient of 1 - |<target|U(theta)|0>|^2. Returns the loss as well.
GradientResult fidelity_loss_gradient(const Circuit& circuit, std::span<const double> params,
                                      const Statevector& target);

}  // namespace qprep
