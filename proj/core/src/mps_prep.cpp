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

#include "qprep/mps_prep.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qprep/simulator.hpp"
#include "qprep/two_qubit.hpp"

namespace qprep {

namespace {

constexpr double kTieTol = 1e-12;

Eigen::Vector4cd fix_phase(Eigen::Vector4cd v) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(v(k)) > 1e-12) {
      v *= std::polar(1.0, -std::arg(v(k)));
      break;
    }
  }
  return v;
}

bool lex_less(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(a(k).real() - b(k).real()) > kTieTol) return a(k).real() < b(k).real();
    if (std::abs(a(k).imag() - b(k).imag()) > kTieTol) return a(k).imag() < b(k).imag();
  }
  return false;
}

// Rows (a^dagger, a_perp^dagger) for a unit 2-vector a.
Mat2 align_to_zero(const Eigen::Vector2cd& a) {
  Mat2 m;
  m << std::conj(a(0)), std::conj(a(1)), -a(1), a(0);
  return m;
}

// When rho is a pure product state the kernel basis is chosen as a tensor
// product, so the disentangler is a local gate.
std::optional<Mat4> local_disentangler(const Mat4& rho, const Eigen::Vector4cd& top,
                                       double top_value) {
  if (std::abs(top_value - rho.trace().real()) > 1e-12 * std::max(1.0, top_value)) return {};
  Mat2 psi;
  psi << top(0), top(1), top(2), top(3);
  Eigen::JacobiSVD<Mat2> svd(psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) > 1e-9) return {};
  const Eigen::Vector2cd a = svd.matrixU().col(0) * svd.singularValues()(0);
  const Eigen::Vector2cd b = svd.matrixV().col(0).conjugate();
  const Mat2 ua = align_to_zero(a.normalized()), ub = align_to_zero(b.normalized());
  Mat4 u;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) u.block<2, 2>(2 * r, 2 * c) = ua(r, c) * ub;
  return u;
}

std::vector<int> window_order(int n, MpsLayout layout) {
  std::vector<int> sites;
  if (layout == MpsLayout::Sequential) {
    for (int i = 0; i + 1 < n; ++i) sites.push_back(i);
  } else {
    for (int i = 0; i + 1 < n; i += 2) sites.push_back(i);
    for (int i = 1; i + 1 < n; i += 2) sites.push_back(i);
  }
  return sites;
}

}  // namespace

Mat4 disentangling_unitary(const Mat4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
  if (es.info() != Eigen::Success) throw std::runtime_error("disentangling_unitary: eigensolver failed");
  std::array<int, 4> order;
  std::iota(order.begin(), order.end(), 0);
  std::array<Eigen::Vector4cd, 4> vecs;
  for (int k = 0; k < 4; ++k) vecs[k] = fix_phase(es.eigenvectors().col(k));
  const Eigen::Vector4d& vals = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(vals(a) - vals(b)) > kTieTol) return vals(a) > vals(b);
    return lex_less(vecs[a], vecs[b]);
  });
  if (auto local = local_disentangler(rho, vecs[order[0]], vals(order[0]))) return *local;
  Mat4 u;
  for (int i = 0; i < 4; ++i) u.row(i) = vecs[order[i]].adjoint();
  return u;
}

SweepResult disentangle_sweep(MpsState mps, int k, MpsLayout layout) {
  if (k != 2) throw std::invalid_argument("disentangle_sweep: only two-site windows are supported");
  if (!mps.canonical_center) throw std::invalid_argument("disentangle_sweep: MPS must be canonical");
  SweepResult out;
  for (int site : window_order(mps.n_sites(), layout)) {
    if (*mps.canonical_center != site && *mps.canonical_center != site + 1) move_center(mps, site);
    const Mat4 u = disentangling_unitary(pair_density_matrix(mps, site));
    apply_two_site(mps, site, u);
    out.unitaries.push_back({site, u});
  }
  out.mps = std::move(mps);
  return out;
}

PrepResult mps_prepare(const Statevector& target, const MpsPrepConfig& config) {
  if (!(config.fidelity_target > 0.0 && config.fidelity_target <= 1.0)) {
    throw std::invalid_argument("mps_prepare: fidelity_target must lie in (0, 1]");
  }
  if (config.layer_bond < 1 && config.layer_bond != kUnlimitedBond) {
    throw std::invalid_argument("mps_prepare: layer_bond must be >= 1");
  }
  if (config.max_sweeps < 1) throw std::invalid_argument("mps_prepare: max_sweeps must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const int n = target.n_qubits();
  PrepResult best;
  best.report.fidelity = -1.0;
  if (n == 1) {
    // A single qubit needs no disentangling window.
    Circuit c(1);
    Mat2 u;
    u << target[0], -std::conj(target[1]), target[1], std::conj(target[0]);
    append_single_qubit(c, u, 0);
    best.circuit = c;
    best.report = measure_preparation("mps", c, target, config.fidelity_target, 0);
  } else {
    Statevector current = target;
    // Block circuits in preparation order (inverse of disentangling order).
    std::deque<Circuit> blocks;
    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
      const SweepResult r =
          disentangle_sweep(mps_from_statevector(current, config.layer_bond).mps, 2, config.layout);
      for (const WindowUnitary& w : r.unitaries) {
        apply_matrix2(current.amplitudes(), n, w.site, w.site + 1, w.u);
        Circuit block(n);
        append_two_qubit(block, w.u.adjoint(), w.site, w.site + 1);
        blocks.push_front(std::move(block));
      }
      Circuit c(n);
      for (const Circuit& b : blocks) c.append(b);
      const PrepReport rep = measure_preparation("mps", c, target, config.fidelity_target, sweep);
      if (rep.fidelity > best.report.fidelity) {
        best.circuit = std::move(c);
        best.report = rep;
      }
      if (rep.fidelity >= config.fidelity_target) break;
    }
  }
  best.report.below_target = best.report.fidelity < config.fidelity_target;
  best.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

RVec zero_amplitude_trace(const Statevector& target, int sweeps, MpsLayout layout) {
  if (target.n_qubits() < 2) throw std::invalid_argument("zero_amplitude_trace: need >= 2 qubits");
  MpsState mps = mps_from_statevector(target).mps;
  RVec out;
  for (int s = 0; s < sweeps; ++s) {
    SweepResult r = disentangle_sweep(std::move(mps), 2, layout);
    mps = std::move(r.mps);
    out.push_back(std::abs(zero_amplitude(mps)));
  }
  return out;
}

}  // namespace qprep
