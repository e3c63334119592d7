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

#include "qprep/simulator.hpp"

#include <stdexcept>
#include <string>

namespace qprep {

namespace {

inline std::size_t bit_of(int n_qubits, int q) { return std::size_t{1} << (n_qubits - 1 - q); }

void apply_x(std::span<cplx> amps, std::size_t stride) {
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!(i & stride)) std::swap(amps[i], amps[i | stride]);
  }
}

void apply_rz(std::span<cplx> amps, std::size_t stride, double theta) {
  const cplx lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & stride) ? hi : lo;
}

void apply_cnot(std::span<cplx> amps, std::size_t control, std::size_t target) {
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & control) && !(i & target)) std::swap(amps[i], amps[i | target]);
  }
}

}  // namespace

void apply_matrix1(std::span<cplx> amps, int n_qubits, int q, const Mat2& m) {
  const std::size_t stride = bit_of(n_qubits, q);
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & stride) continue;
    const cplx a = amps[i], b = amps[i | stride];
    amps[i] = m00 * a + m01 * b;
    amps[i | stride] = m10 * a + m11 * b;
  }
}

void apply_matrix2(std::span<cplx> amps, int n_qubits, int q0, int q1, const Mat4& m) {
  const std::size_t b0 = bit_of(n_qubits, q0), b1 = bit_of(n_qubits, q1);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & (b0 | b1)) continue;
    const std::size_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
    cplx v[4];
    for (int k = 0; k < 4; ++k) v[k] = amps[idx[k]];
    for (int r = 0; r < 4; ++r) {
      amps[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
    }
  }
}

void apply_gate_inplace(std::span<cplx> amps, int n_qubits, const Gate& gate) {
  const int q = gate.qubits[0];
  switch (gate.kind) {
    case GateKind::X: apply_x(amps, bit_of(n_qubits, q)); return;
    case GateKind::RZ: apply_rz(amps, bit_of(n_qubits, q), gate.angle); return;
    case GateKind::SX:
    case GateKind::RX:
    case GateKind::RY: apply_matrix1(amps, n_qubits, q, single_qubit_matrix(gate)); return;
    case GateKind::CNOT:
      apply_cnot(amps, bit_of(n_qubits, q), bit_of(n_qubits, gate.qubits[1]));
      return;
    case GateKind::U2Q: apply_matrix2(amps, n_qubits, q, gate.qubits[1], *gate.matrix); return;
  }
}

void apply_gate_adjoint_inplace(std::span<cplx> amps, int n_qubits, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::CNOT: apply_gate_inplace(amps, n_qubits, gate); return;
    case GateKind::SX:
      apply_matrix1(amps, n_qubits, gate.qubits[0], single_qubit_matrix(gate).adjoint());
      return;
    case GateKind::U2Q:
      apply_matrix2(amps, n_qubits, gate.qubits[0], gate.qubits[1], gate.matrix->adjoint());
      return;
    default: {
      Gate inv = gate;
      inv.angle = -gate.angle;
      apply_gate_inplace(amps, n_qubits, inv);
    }
  }
}

Statevector apply_gate(Statevector state, const Gate& gate) {
  gate.check(state.n_qubits());
  apply_gate_inplace(state.amplitudes(), state.n_qubits(), gate);
  return state;
}

Statevector simulate(const Circuit& circuit, Statevector input) {
  if (input.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("simulate: circuit has " + std::to_string(circuit.n_qubits) +
                                " qubits, input has " + std::to_string(input.n_qubits()));
  }
  circuit.check();
  for (const Gate& g : circuit.gates) apply_gate_inplace(input.amplitudes(), input.n_qubits(), g);
  return input;
}

Statevector simulate(const Circuit& circuit) {
  return simulate(circuit, Statevector(circuit.n_qubits));
}

MatX reduced_density_matrix(const Statevector& state, std::span<const int> sites) {
  const int n = state.n_qubits();
  if (sites.empty()) throw std::invalid_argument("reduced_density_matrix: empty window");
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] < 0 || sites[k] >= n) throw std::invalid_argument("reduced_density_matrix: site out of range");
    if (k > 0 && sites[k] != sites[k - 1] + 1) {
      throw std::invalid_argument("reduced_density_matrix: window must be contiguous and ascending");
    }
  }
  const int first = sites.front();
  const int k = static_cast<int>(sites.size());
  const std::size_t n_low = std::size_t{1} << (n - first - k);
  const std::size_t n_win = std::size_t{1} << k;
  const std::size_t n_high = std::size_t{1} << first;
  MatX rho = MatX::Zero(n_win, n_win);
  for (std::size_t h = 0; h < n_high; ++h) {
    for (std::size_t l = 0; l < n_low; ++l) {
      const std::size_t base = h * n_win * n_low + l;
      for (std::size_t w = 0; w < n_win; ++w) {
        const cplx a = state[base + w * n_low];
        if (a == cplx{}) continue;
        for (std::size_t v = 0; v < n_win; ++v) rho(w, v) += a * std::conj(state[base + v * n_low]);
      }
    }
  }
  return rho;
}

double expectation(const Statevector& state, Observable obs) {
  if (obs.qubit < 0 || obs.qubit >= state.n_qubits()) {
    throw std::out_of_range("expectation: qubit out of range");
  }
  const std::size_t stride = bit_of(state.n_qubits(), obs.qubit);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) acc += (i & stride) ? -std::norm(state[i]) : std::norm(state[i]);
  return acc;
}

RVec z_expectations(const Statevector& state, int count) {
  if (count < 0 || count > state.n_qubits()) throw std::out_of_range("z_expectations: bad count");
  RVec out(static_cast<std::size_t>(count), 0.0);
  const int n = state.n_qubits();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    for (int q = 0; q < count; ++q) out[q] += (i & bit_of(n, q)) ? -p : p;
  }
  return out;
}

}  // namespace qprep
