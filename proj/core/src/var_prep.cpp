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

#include "qprep/var_prep.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qprep/gradient.hpp"
#include "qprep/optim.hpp"
#include "qprep/rng.hpp"

namespace qprep {

Circuit layered_ansatz(int n_qubits, int n_layers, std::span<const double> params) {
  if (n_qubits < 1 || n_layers < 0) throw std::invalid_argument("layered_ansatz: bad shape");
  if (params.size() != ansatz_parameter_count(n_qubits, n_layers)) {
    throw std::invalid_argument("layered_ansatz: expected " +
                                std::to_string(ansatz_parameter_count(n_qubits, n_layers)) +
                                " parameters, got " + std::to_string(params.size()));
  }
  Circuit c(n_qubits);
  std::size_t k = 0;
  for (int l = 0; l < n_layers; ++l) {
    for (int q = 0; q < n_qubits; ++q) {
      c.add(Gate::rz(q, params[k++]));
      c.add(Gate::ry(q, params[k++]));
      c.add(Gate::rz(q, params[k++]));
    }
    for (int q = 0; q + 1 < n_qubits; ++q) c.add(Gate::cnot(q, q + 1));
  }
  return c;
}

PrepResult variational_prepare(const Statevector& target, const VarPrepConfig& config,
                               uint64_t seed) {
  if (!(config.fidelity_target > 0.0 && config.fidelity_target <= 1.0)) {
    throw std::invalid_argument("variational_prepare: fidelity_target must lie in (0, 1]");
  }
  if (std::abs(target.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument("variational_prepare: target is not normalized");
  }
  if (config.steps_per_round < 1 || config.max_layers < 1) {
    throw std::invalid_argument("variational_prepare: steps_per_round and max_layers must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = target.n_qubits();
  const std::size_t per_layer = ansatz_parameter_count(n, 1);
  Rng rng(seed);
  RVec params(per_layer);
  for (double& p : params) p = rng.uniform(-kPi, kPi);
  int layers = 1;
  double best_fid = -1.0;
  RVec best_params = params;
  for (;;) {
    const Circuit circuit = layered_ansatz(n, layers, params);
    Adam adam(params.size(), {config.learning_rate, 0.9, 0.999, 1e-8});
    for (int step = 0; step <= config.steps_per_round; ++step) {
      const GradientResult g = fidelity_loss_gradient(circuit, params, target);
      const double fid = 1.0 - g.value;
      if (fid > best_fid) {
        best_fid = fid;
        best_params = params;
      }
      if (best_fid >= config.fidelity_target || step == config.steps_per_round) break;
      adam.step(params, g.gradient);
    }
    if (best_fid >= config.fidelity_target || layers >= config.max_layers) break;
    // New identity-on-|0...0> layer in front of the current optimum.
    params.assign(per_layer, 0.0);
    params.insert(params.end(), best_params.begin(), best_params.end());
    best_params = params;
    ++layers;
  }
  PrepResult out;
  out.circuit = layered_ansatz(n, layers, best_params);
  out.report = measure_preparation("variational", out.circuit, target, config.fidelity_target, layers);
  out.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace qprep
