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

// Independent reference computations used by the tests. Nothing here calls
// the simulator kernels, the MPS code or the decomposition routines.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qprep/circuit.hpp"
#include "qprep/statevector.hpp"

namespace qprep::oracle {

inline Mat2 pauli(int k) {
  const cplx i(0, 1);
  Mat2 m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// exp(-i theta P / 2) from the closed form cos - i sin P.
inline Mat2 rotation(int axis, double theta) {
  const cplx i(0, 1);
  return std::cos(theta / 2) * pauli(0) - i * std::sin(theta / 2) * pauli(axis);
}

inline MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Single-qubit operator on qubit q of n (qubit 0 is the leftmost factor).
inline MatX embed1(const Mat2& m, int q, int n) {
  MatX out = MatX::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == q ? MatX(m) : MatX(MatX::Identity(2, 2)));
  return out;
}

/// CNOT as |0><0| (x) I + |1><1| (x) X on the full register.
inline MatX embed_cnot(int control, int target, int n) {
  Mat2 p0 = Mat2::Zero(), p1 = Mat2::Zero();
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  MatX a = MatX::Identity(1, 1), b = MatX::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    a = kron(a, k == control ? MatX(p0) : MatX(MatX::Identity(2, 2)));
    b = kron(b, k == control ? MatX(p1) : k == target ? MatX(pauli(1)) : MatX(MatX::Identity(2, 2)));
  }
  return a + b;
}

/// Full-register matrix of a 4x4 operator on adjacent-or-not qubits (q0, q1),
/// built by expanding u in the Pauli basis.
inline MatX embed2(const Mat4& u, int q0, int q1, int n) {
  MatX out = MatX::Zero(MatX::Index(1) << n, MatX::Index(1) << n);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const MatX pab = kron(pauli(a), pauli(b));
      const cplx coef = (pab.adjoint() * u).trace() / 4.0;
      if (std::abs(coef) < 1e-15) continue;
      out += coef * embed1(pauli(a), q0, n) * embed1(pauli(b), q1, n);
    }
  }
  return out;
}

/// Dense unitary of a circuit from explicit gate formulas.
inline MatX circuit_matrix(const Circuit& c) {
  const int n = c.n_qubits;
  MatX u = MatX::Identity(MatX::Index(1) << n, MatX::Index(1) << n);
  const cplx i(0, 1);
  for (const Gate& g : c.gates) {
    MatX m;
    switch (g.kind) {
      case GateKind::X: m = embed1(pauli(1), g.qubits[0], n); break;
      case GateKind::SX: {
        Mat2 sx;
        sx << 0.5 * (1.0 + i), 0.5 * (1.0 - i), 0.5 * (1.0 - i), 0.5 * (1.0 + i);
        m = embed1(sx, g.qubits[0], n);
        break;
      }
      case GateKind::RX: m = embed1(rotation(1, g.angle), g.qubits[0], n); break;
      case GateKind::RY: m = embed1(rotation(2, g.angle), g.qubits[0], n); break;
      case GateKind::RZ: m = embed1(rotation(3, g.angle), g.qubits[0], n); break;
      case GateKind::CNOT: m = embed_cnot(g.qubits[0], g.qubits[1], n); break;
      case GateKind::U2Q: m = embed2(*g.matrix, g.qubits[0], g.qubits[1], n); break;
    }
    u = m * u;
  }
  return u;
}

inline Eigen::VectorXcd to_vector(const Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t k = 0; k < s.dim(); ++k) v[static_cast<Eigen::Index>(k)] = s[k];
  return v;
}

/// Partial trace by explicit index enumeration over the full density matrix.
inline MatX partial_trace(const Statevector& s, const std::vector<int>& keep) {
  const int n = s.n_qubits();
  const Eigen::VectorXcd v = to_vector(s);
  const MatX rho = v * v.adjoint();
  const int k = static_cast<int>(keep.size());
  MatX out = MatX::Zero(1 << k, 1 << k);
  auto bit = [&](std::size_t idx, int q) { return (idx >> (n - 1 - q)) & 1u; };
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (std::size_t c = 0; c < s.dim(); ++c) {
      bool traced_equal = true;
      for (int q = 0; q < n && traced_equal; ++q) {
        const bool kept = std::find(keep.begin(), keep.end(), q) != keep.end();
        if (!kept && bit(r, q) != bit(c, q)) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::size_t rr = 0, cc = 0;
      for (int q : keep) {
        rr = rr * 2 + bit(r, q);
        cc = cc * 2 + bit(c, q);
      }
      out(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(cc)) +=
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

/// Two-qubit depolarizing channel: (1-p) rho + p/15 sum_{P != II} P rho P.
inline Mat4 depolarize(const Mat4& rho, double p) {
  Mat4 out = (1.0 - p) * rho;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      const Mat4 pp = kron(pauli(a), pauli(b));
      out += p / 15.0 * pp * rho * pp.adjoint();
    }
  }
  return out;
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase fix.
inline MatX haar_unitary(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  MatX z(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) z(r, c) = cplx(nd(gen), nd(gen)) / std::sqrt(2.0);
  Eigen::HouseholderQR<MatX> qr(z);
  MatX q = qr.householderQ();
  const MatX rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) q.col(c) *= rr(c, c) / std::abs(rr(c, c));
  return q;
}

/// Minimal CNOT count from the trace invariant of
/// gamma(u) = u (Y(x)Y) u^T (Y(x)Y), u scaled into SU(4):
/// 0 iff gamma = +-I, 1 iff tr(gamma) = 0 and gamma^2 = -I,
/// 2 iff tr(gamma) is real, 3 otherwise.
inline int cnot_count_from_gamma(const Mat4& u, double tol = 1e-7) {
  const cplx det = u.determinant();
  const Mat4 su = u * std::pow(det, -0.25);
  const Mat4 yy = kron(pauli(2), pauli(2));
  const Mat4 g = su * yy * su.transpose() * yy;
  const cplx tr = g.trace();
  if ((g - Mat4::Identity()).norm() < tol || (g + Mat4::Identity()).norm() < tol) return 0;
  if (std::abs(tr) < tol && (g * g + Mat4::Identity()).norm() < tol) return 1;
  if (std::abs(tr.imag()) < tol) return 2;
  return 3;
}

/// Central differences of a scalar function of a real vector.
inline std::vector<double> finite_difference(const std::function<double(const std::vector<double>&)>& f,
                                             std::vector<double> x, double h = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const double fp = f(x);
    x[k] = x0 - h;
    const double fm = f(x);
    x[k] = x0;
    g[k] = (fp - fm) / (2 * h);
  }
  return g;
}

/// max_k |a_k - b_k| / max_k |b_k|.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 1e-300;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::abs(b[k]));
  }
  return diff / scale;
}

/// Fidelity up to global phase between two unitaries of equal size.
inline double unitary_overlap(const MatX& a, const MatX& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

}  // namespace qprep::oracle
