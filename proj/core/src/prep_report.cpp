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

#include "qprep/prep_report.hpp"

#include <cstdio>
#include <stdexcept>

#include "qprep/simulator.hpp"
#include "qprep/synthesis.hpp"

namespace qprep {

std::string_view prep_method_name(PrepMethod m) {
  switch (m) {
    case PrepMethod::Exact: return "exact";
    case PrepMethod::Mps: return "mps";
    case PrepMethod::Variational: return "variational";
    case PrepMethod::Gasp: return "gasp";
  }
  return "?";
}

PrepMethod prep_method_from_name(std::string_view name) {
  for (PrepMethod m : {PrepMethod::Exact, PrepMethod::Mps, PrepMethod::Variational, PrepMethod::Gasp}) {
    if (prep_method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown preparation method '" + std::string(name) + "'");
}

PrepReport measure_preparation(std::string method, const Circuit& circuit,
                               const Statevector& target, double fidelity_target,
                               int iterations) {
  const SynthesisReport s = synthesis_report(circuit, target);
  PrepReport r;
  r.method = std::move(method);
  r.n_qubits = circuit.n_qubits;
  r.fidelity_target = fidelity_target;
  r.fidelity = s.reconstruction_fidelity;
  r.cnot_count = s.cnot_count;
  r.total_gates = s.total_gates;
  r.depth = s.depth;
  r.iterations = iterations;
  r.below_target = r.fidelity < fidelity_target;
  return r;
}

std::string prep_csv_header() {
  return "item,method,n_qubits,fidelity_target,fidelity,cnots,total_gates,depth,iterations,"
         "below_target";
}

std::string prep_csv_row(const std::string& item, const PrepReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%s,%d,%.6g,%.12f,%zu,%zu,%d,%d,%d", item.c_str(),
                r.method.c_str(), r.n_qubits, r.fidelity_target, r.fidelity, r.cnot_count,
                r.total_gates, r.depth, r.iterations, r.below_target ? 1 : 0);
  return buf;
}

}  // namespace qprep
