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

#include "qprep/gate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qprep {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::SX: return "SX";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::U2Q: return "U2Q";
  }
  return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
  for (GateKind k : {GateKind::X, GateKind::SX, GateKind::RX, GateKind::RY, GateKind::RZ,
                     GateKind::CNOT, GateKind::U2Q}) {
    if (gate_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

bool is_unitary(const MatX& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const MatX prod = m.adjoint() * m;
  return (prod - MatX::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

Gate Gate::u2q(int q0, int q1, const Mat4& u) {
  if (!is_unitary(u)) throw std::invalid_argument("Gate::u2q: matrix is not unitary");
  return {GateKind::U2Q, {q0, q1}, 0.0, std::make_shared<const Mat4>(u)};
}

void Gate::check(int n_qubits) const {
  auto in_range = [&](int q) { return q >= 0 && q < n_qubits; };
  if (!in_range(qubits[0])) {
    throw std::out_of_range("gate " + std::string(gate_kind_name(kind)) + ": qubit " +
                            std::to_string(qubits[0]) + " outside register of " +
                            std::to_string(n_qubits));
  }
  if (arity() == 2) {
    if (!in_range(qubits[1])) {
      throw std::out_of_range("gate " + std::string(gate_kind_name(kind)) + ": qubit " +
                              std::to_string(qubits[1]) + " outside register of " +
                              std::to_string(n_qubits));
    }
    if (qubits[0] == qubits[1]) throw std::invalid_argument("two-qubit gate on a single qubit");
  }
  if (kind == GateKind::U2Q && !matrix) throw std::invalid_argument("U2Q gate without matrix");
}

bool Gate::operator==(const Gate& other) const {
  if (kind != other.kind || qubits[0] != other.qubits[0]) return false;
  if (arity() == 2 && qubits[1] != other.qubits[1]) return false;
  if (is_parametric() && angle != other.angle) return false;
  if (kind == GateKind::U2Q) {
    if (!matrix || !other.matrix) return matrix == other.matrix;
    return *matrix == *other.matrix;
  }
  return true;
}

Mat2 single_qubit_matrix(const Gate& g) {
  const cplx i{0.0, 1.0};
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  Mat2 m;
  switch (g.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::SX: m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5); break;
    case GateKind::RX: m << c, -i * s, -i * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ: m << std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2)); break;
    default: throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
  }
  return m;
}

Mat4 two_qubit_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::CNOT: {
      Mat4 m = Mat4::Zero();
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::U2Q: return *g.matrix;
    default: throw std::invalid_argument("two_qubit_matrix: not a two-qubit gate");
  }
}

Gate inverse(const Gate& g) {
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT: return g;
    case GateKind::SX: return Gate::rx(g.qubits[0], -kPi / 2);
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: {
      Gate r = g;
      r.angle = -g.angle;
      return r;
    }
    case GateKind::U2Q: {
      Gate r = g;
      r.matrix = std::make_shared<const Mat4>(g.matrix->adjoint());
      return r;
    }
  }
  return g;
}

}  // namespace qprep
