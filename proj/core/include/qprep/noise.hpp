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

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// One Monte-Carlo trajectory of the circuit under two-qubit depolarizing
/// noise: after every two-qubit gate (CNOT or U2Q), with probability p one of
/// the 15 non-identity two-qubit Paulis is applied, chosen uniformly.
/// Single-qubit gates are ideal. Throws std::invalid_argument unless 0<=p<=1.
Statevector sample_depolarizing(const Circuit& circuit, Statevector state, double p,
                                uint64_t seed);

}  // namespace qprep
