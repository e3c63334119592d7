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

#include "qprep/synthesis.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qprep/simulator.hpp"
#include "qprep/two_qubit.hpp"

namespace qprep {

namespace {

constexpr double kAngleEps = 1e-12;

std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

// Uniformly controlled rotation on `target` with controls 0..k-1, where
// angles[j] is the rotation applied when the controls read j (qubit 0 MSB).
void append_uniform_rotation(Circuit& out, GateKind kind, int target, const RVec& angles) {
  const std::size_t count = angles.size();
  const int k = std::countr_zero(count);
  bool trivial = true;
  for (double a : angles) trivial = trivial && std::abs(a) < kAngleEps;
  if (trivial) return;
  auto rot = [&](double theta) {
    Gate g{kind, {target, -1}, theta, nullptr};
    if (std::abs(theta) >= kAngleEps) out.add(g);
  };
  if (k == 0) {
    rot(angles[0]);
    return;
  }
  const double scale = std::ldexp(1.0, -k);
  for (std::size_t i = 0; i < count; ++i) {
    double theta = 0.0;
    const std::size_t gi = gray(i);
    for (std::size_t j = 0; j < count; ++j) {
      theta += (std::popcount(j & gi) & 1) ? -angles[j] : angles[j];
    }
    rot(theta * scale);
    const std::size_t changed = gi ^ gray((i + 1) % count);
    const int bit = std::countr_zero(changed);
    out.add(Gate::cnot(k - 1 - bit, target));
  }
}

}  // namespace

Circuit exact_prepare(const Statevector& target) {
  const int n = target.n_qubits();
  if (n < 1) throw std::invalid_argument("exact_prepare: target must have at least one qubit");
  if (std::abs(target.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument("exact_prepare: target is not normalized");
  }
  // levels[k] holds 2^k amplitudes over qubits 0..k-1.
  std::vector<CVec> levels(n + 1);
  levels[n].assign(target.amplitudes().begin(), target.amplitudes().end());
  std::vector<RVec> ry(n), rz(n);
  for (int k = n; k >= 1; --k) {
    const CVec& c = levels[k];
    const std::size_t half = c.size() / 2;
    CVec parent(half);
    ry[k - 1].resize(half);
    rz[k - 1].resize(half);
    for (std::size_t m = 0; m < half; ++m) {
      const cplx a = c[2 * m], b = c[2 * m + 1];
      const double ra = std::abs(a), rb = std::abs(b);
      const double alpha = ra > 0 ? std::arg(a) : 0.0;
      const double beta = rb > 0 ? std::arg(b) : 0.0;
      ry[k - 1][m] = 2 * std::atan2(rb, ra);
      rz[k - 1][m] = beta - alpha;
      parent[m] = std::polar(std::hypot(ra, rb), (alpha + beta) / 2);
    }
    levels[k - 1] = std::move(parent);
  }
  Circuit out(n);
  for (int t = 0; t < n; ++t) {
    append_uniform_rotation(out, GateKind::RY, t, ry[t]);
    append_uniform_rotation(out, GateKind::RZ, t, rz[t]);
  }
  return out;
}

std::size_t count_cnots(const Circuit& circuit) {
  std::size_t total = 0;
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::CNOT) ++total;
    if (g.kind == GateKind::U2Q) total += static_cast<std::size_t>(min_cnot_count(*g.matrix));
  }
  return total;
}

Circuit transpile_to_basis(const Circuit& circuit) {
  Circuit out(circuit.n_qubits);
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::U2Q) {
      append_two_qubit(out, *g.matrix, g.qubits[0], g.qubits[1]);
    } else {
      out.add(g);
    }
  }
  return out;
}

SynthesisReport synthesis_report(const Circuit& circuit, const Statevector& target) {
  const Circuit basis = transpile_to_basis(circuit);
  SynthesisReport r;
  r.cnot_count = basis.cnot_gates();
  r.total_gates = basis.size();
  r.depth = basis.depth();
  r.reconstruction_fidelity = fidelity(simulate(basis), target);
  return r;
}

std::string synthesis_csv_header() { return "method,n_qubits,cnots,depth,fidelity"; }

std::string synthesis_csv_row(const std::string& method, int n_qubits,
                              const SynthesisReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%d,%zu,%d,%.10f", method.c_str(), n_qubits,
                report.cnot_count, report.depth, report.reconstruction_fidelity);
  return buf;
}

}  // namespace qprep
