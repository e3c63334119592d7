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

#include "qprep/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "qprep/simulator.hpp"

namespace qprep {

Circuit& Circuit::add(Gate g) {
  g.check(n_qubits);
  gates.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits > n_qubits) throw std::invalid_argument("Circuit::append: register too small");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

std::size_t Circuit::parameter_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_parametric(); }));
}

RVec Circuit::parameters() const {
  RVec out;
  out.reserve(gates.size());
  for (const Gate& g : gates) {
    if (g.is_parametric()) out.push_back(g.angle);
  }
  return out;
}

void Circuit::set_parameters(std::span<const double> params) {
  if (params.size() != parameter_count()) {
    throw std::invalid_argument("Circuit::set_parameters: expected " +
                                std::to_string(parameter_count()) + " parameters, got " +
                                std::to_string(params.size()));
  }
  std::size_t k = 0;
  for (Gate& g : gates) {
    if (g.is_parametric()) g.angle = params[k++];
  }
}

std::size_t Circuit::cnot_gates() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::CNOT; }));
}

int Circuit::depth() const {
  std::vector<int> level(static_cast<std::size_t>(std::max(n_qubits, 0)), 0);
  int depth = 0;
  for (const Gate& g : gates) {
    int l = level[g.qubits[0]];
    if (g.arity() == 2) l = std::max(l, level[g.qubits[1]]);
    ++l;
    level[g.qubits[0]] = l;
    if (g.arity() == 2) level[g.qubits[1]] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

void Circuit::check() const {
  for (const Gate& g : gates) g.check(n_qubits);
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.n_qubits);
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse(*it));
  return out;
}

MatX circuit_unitary(const Circuit& c) {
  if (c.n_qubits > 10) throw std::invalid_argument("circuit_unitary: too many qubits");
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  MatX u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const Statevector out = simulate(c, Statevector::basis(c.n_qubits, col));
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = out[row];
  }
  return u;
}

}  // namespace qprep
