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

#include <vector>

#include "qprep/mps.hpp"
#include "qprep/prep_report.hpp"

namespace qprep {

enum class MpsLayout {
  /// Windows (0,1), (1,2), ..., (n-2,n-1).
  Sequential,
  /// Disjoint windows (0,1), (2,3), ... followed by the bridging windows
  /// (1,2), (3,4), ...; every adjacent pair is covered once per sweep.
  ParallelPairs,
};

struct WindowUnitary {
  int site = 0;  // window is (site, site+1)
  Mat4 u;
};

struct SweepResult {
  std::vector<WindowUnitary> unitaries;
  MpsState mps;
};

/// The eigenvector-ordering disentangler for a 4x4 density matrix:
/// U = sum_i |i><phi_i| with phi_i ordered by decreasing eigenvalue. Ties
/// (within 1e-12) are broken by lexicographic order of the eigenvector
/// components after fixing each eigenvector's phase so its first non-zero
/// component is real and positive.
Mat4 disentangling_unitary(const Mat4& rho);

/// One disentangling sweep with two-site windows. Requires a canonical MPS;
/// throws std::invalid_argument for k != 2 or when canonical_center is unset.
SweepResult disentangle_sweep(MpsState mps, int k = 2, MpsLayout layout = MpsLayout::Sequential);

struct MpsPrepConfig {
  double fidelity_target = 0.6;
  MpsLayout layout = MpsLayout::Sequential;
  int max_sweeps = 16;
  /// Bond dimension of the MPS each sweep's windows are computed from. With
  /// 2, every sweep factorizes the current state truncated to bond 2, so the
  /// sweep exactly disentangles that approximation. kUnlimitedBond uses the
  /// untruncated state.
  int layer_bond = 2;
};

/// Repeats disentangling sweeps until the emitted circuit (the reversed,
/// inverted window unitaries, each decomposed into <= 3 CNOTs) reaches the
/// fidelity target against `target`, or max_sweeps is exhausted; in the
/// latter case the best circuit seen is returned with below_target set.
/// Sweep unitaries are always applied to the exact current state.
/// Throws std::invalid_argument unless 0 < fidelity_target <= 1.
PrepResult mps_prepare(const Statevector& target, const MpsPrepConfig& config);

/// |<0...0|psi'>| after each of `sweeps` sequential sweeps; diagnostic used
/// to log the amplitude growth of the heuristic.
RVec zero_amplitude_trace(const Statevector& target, int sweeps,
                          MpsLayout layout = MpsLayout::Sequential);

}  // namespace qprep
