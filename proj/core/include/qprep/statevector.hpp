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

#include <cstddef>
#include <span>

#include "qprep/types.hpp"

namespace qprep {

/// Pure n-qubit state. Qubit 0 is the most significant bit of the
/// computational-basis index: |q0 q1 ... q_{n-1}>.
class Statevector {
 public:
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits);

  /// Takes ownership of amplitudes; the length must be a power of two and the
  /// norm must be 1 within kUnitaryTol unless `normalize` is set.
  static Statevector from_amplitudes(CVec amplitudes, bool normalize = false);

  static Statevector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  void normalize();

  bool operator==(const Statevector&) const = default;

 private:
  Statevector(int n_qubits, CVec amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

  int n_qubits_;
  CVec amps_;
};

/// <a|b>.
cplx inner_product(const Statevector& a, const Statevector& b);

/// |<a|b>|^2.
double fidelity(const Statevector& a, const Statevector& b);

Statevector random_statevector(int n_qubits, uint64_t seed);

}  // namespace qprep
