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

#include "qprep/gradient.hpp"

#include <stdexcept>

#include "qprep/simulator.hpp"

namespace qprep {

namespace {

// Im <lambda| P_q |psi> for the rotation axis of g.
double generator_overlap(std::span<const cplx> lam, std::span<const cplx> psi, int n, const Gate& g) {
  const std::size_t stride = std::size_t{1} << (n - 1 - g.qubits[0]);
  cplx acc{0.0, 0.0};
  switch (g.kind) {
    case GateKind::RX:
      for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(lam[i]) * psi[i ^ stride];
      break;
    case GateKind::RY:
      // Y|0> = i|1>, Y|1> = -i|0>
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const cplx y = (i & stride) ? cplx(0, 1) * psi[i ^ stride] : cplx(0, -1) * psi[i ^ stride];
        acc += std::conj(lam[i]) * y;
      }
      break;
    case GateKind::RZ:
      for (std::size_t i = 0; i < psi.size(); ++i) {
        const cplx t = std::conj(lam[i]) * psi[i];
        acc += (i & stride) ? -t : t;
      }
      break;
    default: break;
  }
  return acc.imag();
}

}  // namespace

RVec adjoint_backprop(const Circuit& circuit, Statevector output, CVec lambda,
                      CVec* input_cotangent) {
  const int n = circuit.n_qubits;
  if (output.n_qubits() != n || lambda.size() != output.dim()) {
    throw std::invalid_argument("adjoint_backprop: dimension mismatch");
  }
  RVec grad(circuit.parameter_count(), 0.0);
  std::size_t k = grad.size();
  std::span<cplx> psi = output.amplitudes();
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    if (it->is_parametric()) grad[--k] = generator_overlap(lambda, psi, n, *it);
    apply_gate_adjoint_inplace(psi, n, *it);
    apply_gate_adjoint_inplace(lambda, n, *it);
  }
  if (input_cotangent) *input_cotangent = std::move(lambda);
  return grad;
}

GradientResult circuit_gradient(const Circuit& circuit, std::span<const double> params,
                                const Statevector& input, int n_observables,
                                const ExpectationLoss& loss) {
  Circuit bound = circuit;
  bound.set_parameters(params);
  const Statevector out = simulate(bound, input);
  const RVec expect = z_expectations(out, n_observables);
  RVec dl(expect.size(), 0.0);
  GradientResult r;
  r.value = loss(expect, dl);
  const int n = out.n_qubits();
  CVec lambda(out.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) {
    double w = 0.0;
    for (int q = 0; q < n_observables; ++q) w += (i >> (n - 1 - q) & 1) ? -dl[q] : dl[q];
    lambda[i] = w * out[i];
  }
  r.gradient = adjoint_backprop(bound, out, std::move(lambda));
  return r;
}

GradientResult fidelity_loss_gradient(const Circuit& circuit, std::span<const double> params,
                                      const Statevector& target) {
  if (target.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("fidelity_loss_gradient: dimension mismatch");
  }
  Circuit bound = circuit;
  bound.set_parameters(params);
  const Statevector out = simulate(bound);
  const cplx overlap = inner_product(target, out);
  CVec lambda(out.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) lambda[i] = target[i] * overlap;
  GradientResult r;
  r.value = 1.0 - std::norm(overlap);
  r.gradient = adjoint_backprop(bound, out, std::move(lambda));
  for (double& g : r.gradient) g = -g;
  return r;
}

}  // namespace qprep
