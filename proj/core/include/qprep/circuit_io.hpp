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

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qprep/circuit.hpp"

namespace qprep {

/// Circuit as a JSON array of {"kind", "qubits", "params"} objects. Rotation
/// params hold one angle; U2Q params hold 16 row-major [re, im] pairs.
nlohmann::json circuit_to_json(const Circuit& c);

/// Inverse of circuit_to_json. Accepts a bare gate array or an object
/// {"n_qubits": n, "gates": [...]}. With a bare array and no explicit
/// n_qubits the register size is 1 + the largest qubit index.
/// Throws std::invalid_argument on malformed input or non-unitary payloads.
Circuit circuit_from_json(const nlohmann::json& j, std::optional<int> n_qubits = std::nullopt);

/// OpenQASM 2.0 text. Only {x, sx, rx, ry, rz, cx} are representable;
/// throws std::invalid_argument when a U2Q gate is present.
std::string circuit_to_qasm(const Circuit& c);

}  // namespace qprep
