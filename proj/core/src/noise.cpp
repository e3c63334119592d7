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

#include "qprep/noise.hpp"

#include <stdexcept>

#include "qprep/rng.hpp"
#include "qprep/simulator.hpp"

namespace qprep {

namespace {

// 0 = I, 1 = X, 2 = Y, 3 = Z
void apply_pauli(std::span<cplx> amps, int n, int q, int which) {
  if (which == 0) return;
  const std::size_t stride = std::size_t{1} << (n - 1 - q);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & stride) continue;
    cplx& a = amps[i];
    cplx& b = amps[i | stride];
    switch (which) {
      case 1: std::swap(a, b); break;
      case 2: {
        const cplx a0 = a;
        a = cplx(0, -1) * b;
        b = cplx(0, 1) * a0;
        break;
      }
      case 3: b = -b; break;
    }
  }
}

}  // namespace

Statevector sample_depolarizing(const Circuit& circuit, Statevector state, double p,
                                uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_depolarizing: p must lie in [0, 1]");
  if (state.n_qubits() != circuit.n_qubits) throw std::invalid_argument("sample_depolarizing: dimension mismatch");
  circuit.check();
  Rng rng(seed);
  const int n = circuit.n_qubits;
  std::span<cplx> amps = state.amplitudes();
  for (const Gate& g : circuit.gates) {
    apply_gate_inplace(amps, n, g);
    if (!g.is_two_qubit() || p == 0.0) continue;
    if (rng.uniform() < p) {
      const int k = 1 + static_cast<int>(rng.index(15));
      apply_pauli(amps, n, g.qubits[0], k / 4);
      apply_pauli(amps, n, g.qubits[1], k % 4);
    }
  }
  return state;
}

}  // namespace qprep
