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

#include <span>

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// Single-qubit Pauli-Z readout.
struct Observable {
  int qubit = 0;
};

/// U|psi>. Throws std::out_of_range for qubit indices outside the register.
Statevector apply_gate(Statevector state, const Gate& gate);

/// In-place variant used by the hot loops; performs no validation.
void apply_gate_inplace(std::span<cplx> amps, int n_qubits, const Gate& gate);

/// Applies the adjoint of `gate`.
void apply_gate_adjoint_inplace(std::span<cplx> amps, int n_qubits, const Gate& gate);

void apply_matrix1(std::span<cplx> amps, int n_qubits, int q, const Mat2& m);
void apply_matrix2(std::span<cplx> amps, int n_qubits, int q0, int q1, const Mat4& m);

/// Runs the circuit on `input` (default |0...0>).
Statevector simulate(const Circuit& circuit, Statevector input);
Statevector simulate(const Circuit& circuit);

/// Reduced density matrix on a contiguous, ascending window of qubits.
/// Throws std::invalid_argument for empty or non-contiguous windows.
MatX reduced_density_matrix(const Statevector& state, std::span<const int> sites);

/// <psi|Z_q|psi>.
double expectation(const Statevector& state, Observable obs);

/// <Z_0>, ..., <Z_{count-1}>.
RVec z_expectations(const Statevector& state, int count);

}  // namespace qprep
