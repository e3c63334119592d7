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

#include <cstdint>
#include <span>

#include "qprep/prep_report.hpp"

namespace qprep {

/// Layered hardware-efficient ansatz shared by the variational preparation
/// and the classifier: each layer applies RZ RY RZ to every qubit followed by
/// the CNOT chain (0,1), (1,2), ..., (n-2,n-1). Parameters are ordered
/// layer-major, then qubit, then (z, y, z).
Circuit layered_ansatz(int n_qubits, int n_layers, std::span<const double> params);

inline std::size_t ansatz_parameter_count(int n_qubits, int n_layers) {
  return static_cast<std::size_t>(3) * n_qubits * n_layers;
}

struct VarPrepConfig {
  double fidelity_target = 0.6;
  int steps_per_round = 100;
  int max_layers = 25;
  double learning_rate = 0.05;
};

/// Starts with one layer and runs `steps_per_round` Adam steps on
/// 1 - |<target|V(theta)|0>|^2. While the best fidelity is below target a
/// layer with zero angles is inserted at the front of the circuit (it acts
/// trivially on |0...0>, so the previous optimum carries over) and all
/// parameters are optimized again. Throws std::invalid_argument for an
/// unnormalized target or a fidelity target outside (0, 1].
PrepResult variational_prepare(const Statevector& target, const VarPrepConfig& config,
                               uint64_t seed);

}  // namespace qprep
