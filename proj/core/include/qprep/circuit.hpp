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
#include <vector>

#include "qprep/gate.hpp"

namespace qprep {

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  /// Appends after validating qubit indices.
  Circuit& add(Gate g);
  Circuit& append(const Circuit& other);

  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }

  /// Number of RX/RY/RZ angles, in gate order.
  std::size_t parameter_count() const;
  RVec parameters() const;
  void set_parameters(std::span<const double> params);

  /// Count of explicit CNOT gates (U2Q blocks are not expanded here; see
  /// count_cnots in synthesis.hpp).
  std::size_t cnot_gates() const;

  /// ASAP layering depth; 0 for an empty circuit.
  int depth() const;

  void check() const;

  bool operator==(const Circuit&) const = default;
};

/// Reversed circuit of inverse gates.
Circuit inverse(const Circuit& c);

/// Dense unitary of the circuit (n <= 10). Intended for tests and tooling.
MatX circuit_unitary(const Circuit& c);

}  // namespace qprep
