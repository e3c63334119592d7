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

#include <string>

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// Exact state preparation from |0...0> using cascades of uniformly
/// controlled RY/RZ rotations (2^{k} CNOTs for the k-controlled stage, so
/// O(2^n) overall). Angles equal to zero are dropped; a fully trivial stage
/// emits nothing, so |0...0> yields an empty circuit.
/// Throws std::invalid_argument for zero-qubit or unnormalized targets.
Circuit exact_prepare(const Statevector& target);

/// Explicit CNOTs plus the minimal CNOT count of each U2Q block.
std::size_t count_cnots(const Circuit& circuit);

/// Rewrites the circuit over {X, SX, RX, RY, RZ, CNOT}; U2Q blocks are
/// decomposed with decompose_two_qubit, everything else is copied unchanged.
Circuit transpile_to_basis(const Circuit& circuit);

struct SynthesisReport {
  std::size_t cnot_count = 0;
  std::size_t total_gates = 0;
  int depth = 0;
  double reconstruction_fidelity = 0.0;
};

/// Metrics of the basis-transpiled circuit, with fidelity of its output
/// (from |0...0>) against `target`.
SynthesisReport synthesis_report(const Circuit& circuit, const Statevector& target);

/// "method,n_qubits,cnots,depth,fidelity"
std::string synthesis_csv_header();
std::string synthesis_csv_row(const std::string& method, int n_qubits,
                              const SynthesisReport& report);

}  // namespace qprep
