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
#include <vector>

#include "qprep/statevector.hpp"

namespace qprep {

/// Site tensor A[l, s, r] with physical dimension 2, stored l-major.
struct SiteTensor {
  int left = 1;
  int right = 1;
  CVec data;

  SiteTensor() = default;
  SiteTensor(int l, int r) : left(l), right(r), data(static_cast<std::size_t>(l) * 2 * r) {}

  cplx& operator()(int l, int s, int r) {
    return data[(static_cast<std::size_t>(l) * 2 + s) * right + r];
  }
  const cplx& operator()(int l, int s, int r) const {
    return data[(static_cast<std::size_t>(l) * 2 + s) * right + r];
  }
};

/// Open-boundary matrix product state. When canonical_center is set, every
/// tensor left of it is a left isometry and every tensor right of it a right
/// isometry.
struct MpsState {
  std::vector<SiteTensor> sites;
  std::optional<int> canonical_center;

  int n_sites() const { return static_cast<int>(sites.size()); }
  /// Bond dimensions between consecutive sites (n - 1 entries).
  std::vector<int> bond_dims() const;
  int max_bond() const;
};

inline constexpr int kUnlimitedBond = 0;

struct MpsFactorization {
  MpsState mps;
  /// |<original|reconstructed>|^2 after truncation and renormalization.
  double fidelity = 1.0;
};

/// Left-to-right sequential SVD. Each bond keeps at most `max_bond` of the
/// largest singular values (kUnlimitedBond keeps all non-negligible ones).
/// The result is renormalized and left-canonical with center n-1.
/// Throws std::invalid_argument when max_bond < 1 (and not unlimited).
MpsFactorization mps_from_statevector(const Statevector& state, int max_bond = kUnlimitedBond);

/// Dense contraction. Throws std::length_error above 2^24 amplitudes.
Statevector mps_to_statevector(const MpsState& mps);

/// Brings the MPS into mixed canonical form centred on `center`.
void canonicalize(MpsState& mps, int center);

/// Moves an existing center one site at a time to `center`.
void move_center(MpsState& mps, int center);

/// Max deviation from the isometry conditions implied by canonical_center.
double isometry_error(const MpsState& mps);

/// Two-site reduced density matrix on (site, site+1); index 2*s0 + s1.
/// Requires canonical_center == site or site+1.
Mat4 pair_density_matrix(const MpsState& mps, int site);

/// Applies u to (site, site+1), splitting by SVD with no truncation beyond
/// singular values below 1e-14. Leaves the center on site+1.
void apply_two_site(MpsState& mps, int site, const Mat4& u);

/// <0...0|psi>.
cplx zero_amplitude(const MpsState& mps);

}  // namespace qprep
