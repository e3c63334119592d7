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

#include <array>
#include <utility>

#include "qprep/circuit.hpp"

namespace qprep {

/// Cartan coordinates (c1, c2, c3), pi/4 >= c1 >= c2 >= c3 >= 0, such that
/// u equals exp(i(c1 XX + c2 YY +- c3 ZZ)) up to local gates. The sign of c3
/// (the mirror image) is not resolved. Throws std::invalid_argument if u is
/// not unitary.
std::array<double, 3> weyl_coordinates(const Mat4& u);

/// Minimal number of CNOTs (0..3) needed to implement u, read off the Weyl
/// coordinates with boundary tolerance `tol`:
///   0: (0, 0, 0)   1: (pi/4, 0, 0)   2: c3 = 0   3: otherwise
int min_cnot_count(const Mat4& u, double tol = 1e-9);

/// Two-qubit circuit over {RX, RY, RZ, CNOT} with min_cnot_count(u) CNOTs
/// whose unitary equals u up to global phase.
Circuit decompose_two_qubit(const Mat4& u);

/// Appends the decomposition of u acting on (q0, q1) of a larger circuit.
void append_two_qubit(Circuit& out, const Mat4& u, int q0, int q1);

/// ZYZ Euler angles: u = e^{i phase} RZ(a) RY(b) RZ(c).
struct EulerZYZ {
  double a = 0, b = 0, c = 0, phase = 0;
};
EulerZYZ euler_zyz(const Mat2& u);

/// Appends RZ(c), RY(b), RZ(a) on q, skipping angles equal to 0 mod 2pi.
void append_single_qubit(Circuit& out, const Mat2& u, int q);

/// Splits a 4x4 local unitary into a (x) b. The product equals k up to phase
/// when k is a tensor product; otherwise the best rank-one factors are returned.
std::pair<Mat2, Mat2> kron_factor(const Mat4& k);

}  // namespace qprep
