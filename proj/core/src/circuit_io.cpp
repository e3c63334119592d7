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

#include "qprep/circuit_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qprep {

using nlohmann::json;

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) {
    json entry;
    entry["kind"] = gate_kind_name(g.kind);
    entry["qubits"] = g.arity() == 2 ? json::array({g.qubits[0], g.qubits[1]})
                                      : json::array({g.qubits[0]});
    json params = json::array();
    if (g.is_parametric()) {
      params.push_back(g.angle);
    } else if (g.kind == GateKind::U2Q) {
      for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
          const cplx v = (*g.matrix)(r, col);
          params.push_back(json::array({v.real(), v.imag()}));
        }
      }
    }
    entry["params"] = std::move(params);
    gates.push_back(std::move(entry));
  }
  return gates;
}

namespace {

Gate gate_from_json(const json& e) {
  if (!e.is_object() || !e.contains("kind") || !e.contains("qubits")) {
    throw std::invalid_argument("circuit json: gate entry needs 'kind' and 'qubits'");
  }
  const GateKind kind = gate_kind_from_name(e.at("kind").get<std::string>());
  const auto qubits = e.at("qubits").get<std::vector<int>>();
  const json params = e.value("params", json::array());
  Gate g;
  g.kind = kind;
  if (qubits.size() != static_cast<std::size_t>(g.arity())) {
    throw std::invalid_argument("circuit json: wrong qubit count for " +
                                std::string(gate_kind_name(kind)));
  }
  g.qubits[0] = qubits[0];
  if (g.arity() == 2) g.qubits[1] = qubits[1];
  if (g.is_parametric()) {
    if (params.size() != 1) throw std::invalid_argument("circuit json: rotation needs one param");
    g.angle = params[0].get<double>();
  } else if (kind == GateKind::U2Q) {
    if (params.size() != 16) throw std::invalid_argument("circuit json: U2Q needs 16 params");
    Mat4 m;
    for (int k = 0; k < 16; ++k) {
      const auto& p = params[k];
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("circuit json: U2Q entry must be [re, im]");
      m(k / 4, k % 4) = cplx(p[0].get<double>(), p[1].get<double>());
    }
    g = Gate::u2q(g.qubits[0], g.qubits[1], m);
  }
  return g;
}

}  // namespace

Circuit circuit_from_json(const json& j, std::optional<int> n_qubits) {
  const json* gates = &j;
  if (j.is_object()) {
    if (!j.contains("gates")) throw std::invalid_argument("circuit json: missing 'gates'");
    gates = &j.at("gates");
    if (!n_qubits && j.contains("n_qubits")) n_qubits = j.at("n_qubits").get<int>();
  }
  if (!gates->is_array()) throw std::invalid_argument("circuit json: gates must be an array");
  std::vector<Gate> parsed;
  int max_q = -1;
  try {
    for (const json& e : *gates) {
      parsed.push_back(gate_from_json(e));
      max_q = std::max({max_q, parsed.back().qubits[0], parsed.back().qubits[1]});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("circuit json: ") + e.what());
  }
  Circuit c(n_qubits.value_or(max_q + 1));
  for (Gate& g : parsed) c.add(std::move(g));
  return c;
}

std::string circuit_to_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits << "];\n";
  char buf[64];
  for (const Gate& g : c.gates) {
    const int a = g.qubits[0], b = g.qubits[1];
    switch (g.kind) {
      case GateKind::X: out << "x q[" << a << "];\n"; break;
      case GateKind::SX: out << "sx q[" << a << "];\n"; break;
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out << (g.kind == GateKind::RX ? "rx(" : g.kind == GateKind::RY ? "ry(" : "rz(") << buf
            << ") q[" << a << "];\n";
        break;
      case GateKind::CNOT: out << "cx q[" << a << "],q[" << b << "];\n"; break;
      case GateKind::U2Q:
        throw std::invalid_argument("circuit_to_qasm: U2Q blocks must be transpiled first");
    }
  }
  return out.str();
}

}  // namespace qprep
