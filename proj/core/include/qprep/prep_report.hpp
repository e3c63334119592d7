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

#include <string>
#include <string_view>

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

enum class PrepMethod { Exact, Mps, Variational, Gasp };

std::string_view prep_method_name(PrepMethod m);
/// Accepts "exact", "mps", "variational", "gasp". Throws std::invalid_argument.
PrepMethod prep_method_from_name(std::string_view name);

/// Per-state outcome of a preparation routine. Every number is measured on
/// the emitted circuit (basis-transpiled, simulated densely from |0...0>).
struct PrepReport {
  std::string method;
  int n_qubits = 0;
  double fidelity_target = 1.0;
  double fidelity = 0.0;
  std::size_t cnot_count = 0;
  std::size_t total_gates = 0;
  int depth = 0;
  /// Sweeps (MPS), layers (variational) or generations (GASP); 0 for exact.
  int iterations = 0;
  bool below_target = false;
  /// Excluded from CSV output so reports stay reproducible.
  double wall_time_s = 0.0;
};

struct PrepResult {
  Circuit circuit;
  PrepReport report;
};

/// Fills every measured field of a report for `circuit` against `target`.
PrepReport measure_preparation(std::string method, const Circuit& circuit,
                               const Statevector& target, double fidelity_target,
                               int iterations);

std::string prep_csv_header();
std::string prep_csv_row(const std::string& item, const PrepReport& r);

}  // namespace qprep
