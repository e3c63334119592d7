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

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "qprep/types.hpp"

namespace qprep {

enum class GateKind { X, SX, RX, RY, RZ, CNOT, U2Q };

std::string_view gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

/// A gate acting on one or two qubits. For CNOT, qubits[0] is the control.
/// For U2Q the matrix is indexed as 2*b(qubits[0]) + b(qubits[1]).
/// Rotations follow R_P(theta) = exp(-i theta P / 2).
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;
  std::shared_ptr<const Mat4> matrix;

  static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0, nullptr}; }
  static Gate sx(int q) { return {GateKind::SX, {q, -1}, 0.0, nullptr}; }
  static Gate rx(int q, double theta) { return {GateKind::RX, {q, -1}, theta, nullptr}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, {q, -1}, theta, nullptr}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, {q, -1}, theta, nullptr}; }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, 0.0, nullptr};
  }
  /// Throws std::invalid_argument unless u is unitary within kUnitaryTol.
  static Gate u2q(int q0, int q1, const Mat4& u);

  int arity() const { return kind == GateKind::CNOT || kind == GateKind::U2Q ? 2 : 1; }
  bool is_parametric() const {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }
  bool is_two_qubit() const { return arity() == 2; }

  /// Validates the qubit indices against a register of n qubits.
  void check(int n_qubits) const;

  bool operator==(const Gate& other) const;
};

/// 2x2 matrix of a single-qubit gate.
Mat2 single_qubit_matrix(const Gate& g);

/// 4x4 matrix of a two-qubit gate in its own (qubits[0], qubits[1]) frame.
Mat4 two_qubit_matrix(const Gate& g);

/// The gate's inverse. SX^dagger is emitted as RX(-pi/2), equal up to phase.
Gate inverse(const Gate& g);

bool is_unitary(const MatX& m, double tol = kUnitaryTol);

}  // namespace qprep
