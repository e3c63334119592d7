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

#include "qprep/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qprep/rng.hpp"

namespace qprep {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw std::invalid_argument("Statevector: unsupported qubit count " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(CVec amplitudes, bool normalize) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("Statevector: length must be a power of two, got " +
                                std::to_string(dim));
  }
  const int n = std::countr_zero(dim);
  Statevector s(n, std::move(amplitudes));
  const double norm2 = s.norm_squared();
  if (normalize) {
    if (!(norm2 > 0.0)) throw std::invalid_argument("Statevector: zero vector");
    s.normalize();
  } else if (std::abs(norm2 - 1.0) > kUnitaryTol) {
    throw std::invalid_argument("Statevector: amplitudes not normalized (norm^2 = " +
                                std::to_string(norm2) + ")");
  }
  return s;
}

Statevector Statevector::basis(int n_qubits, std::size_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("Statevector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm_squared() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return acc;
}

void Statevector::normalize() {
  const double inv = 1.0 / std::sqrt(norm_squared());
  for (cplx& a : amps_) a *= inv;
}

cplx inner_product(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity: dimension mismatch");
  const double f = std::norm(inner_product(a, b));
  return std::min(1.0, std::max(0.0, f));
}

Statevector random_statevector(int n_qubits, uint64_t seed) {
  Rng rng(seed);
  CVec amps(std::size_t{1} << n_qubits);
  for (cplx& a : amps) a = {rng.normal(), rng.normal()};
  return Statevector::from_amplitudes(std::move(amps), true);
}

}  // namespace qprep
