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

#include "qprep/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qprep/rng.hpp"

namespace qprep {

namespace {

using Real4 = Eigen::Matrix4d;

const Mat4& magic_basis() {
  static const Mat4 b = [] {
    const cplx i{0.0, 1.0};
    Mat4 m;
    m << 1, 0, 0, i,
         0, i, 1, 0,
         0, i, -1, 0,
         1, 0, 0, -i;
    return Mat4(m / std::sqrt(2.0));
  }();
  return b;
}

double wrap_angle(double x) {
  x = std::remainder(x, 2 * kPi);
  return x <= -kPi ? x + 2 * kPi : x;
}

Mat4 to_special(const Mat4& u) {
  const cplx det = u.determinant();
  return u * std::pow(det, -0.25);
}

// (a, b, c) with u ~ exp(i(a XX + b YY + c ZZ)) up to local gates, unreduced.
std::array<double, 3> interaction_coefficients(const Mat4& u) {
  const Mat4& b = magic_basis();
  const Mat4 um = b.adjoint() * to_special(u) * b;
  const Mat4 m = um.transpose() * um;
  Eigen::ComplexEigenSolver<Mat4> es(m, false);
  std::array<double, 4> th;
  for (int k = 0; k < 4; ++k) th[k] = std::arg(es.eigenvalues()(k)) / 2;
  std::sort(th.begin(), th.end());
  // Eigenphases are only known mod pi; pick representatives that sum to 0.
  long shift = std::lround((th[0] + th[1] + th[2] + th[3]) / kPi);
  for (int k = 3; shift > 0 && k >= 0; --k, --shift) th[k] -= kPi;
  for (int k = 0; shift < 0 && k < 4; ++k, ++shift) th[k] += kPi;
  const double s1 = th[0], s2 = th[1], s3 = th[2], s4 = th[3];
  return {(s1 + s3 - s2 - s4) / 4, (s2 + s3 - s1 - s4) / 4, (s1 + s2 - s3 - s4) / 4};
}

struct Spectral {
  Real4 p;           // real orthogonal, det +1
  Eigen::Vector4cd d;  // eigenvalues of um^T um
  Mat4 um;
};

Spectral spectral(const Mat4& w) {
  const Mat4& b = magic_basis();
  Spectral s;
  s.um = b.adjoint() * w * b;
  const Mat4 m = s.um.transpose() * s.um;
  const Real4 re = m.real(), im = m.imag();
  Rng rng(0x5eedULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double r = rng.uniform(0.5, 2.0) * (attempt % 2 ? -1.0 : 1.0);
    Eigen::SelfAdjointEigenSolver<Real4> es(re + r * im);
    Real4 p = es.eigenvectors();
    if (p.determinant() < 0) p.col(0) = -p.col(0);
    const Mat4 diag = p.transpose().cast<cplx>() * m * p.cast<cplx>();
    Mat4 off = diag;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() < 1e-9) {
      s.p = p;
      s.d = diag.diagonal();
      return s;
    }
  }
  throw std::runtime_error("two-qubit decomposition: simultaneous diagonalization failed");
}

struct Match {
  Mat4 k1, k2;
  double error = std::numeric_limits<double>::infinity();
};

// Finds local K1, K2 with u = K1 v K2 (up to phase) when u and v share
// interaction coefficients. Both inputs must be in SU(4).
Match match_local(const Mat4& u, const Mat4& v) {
  Match best;
  const Spectral su = spectral(u);
  for (const cplx scale : {cplx(1, 0), cplx(0, 1)}) {
    const Spectral sv = spectral(scale * v);
    // Greedy eigenvalue assignment.
    std::array<int, 4> perm{};
    std::array<bool, 4> used{};
    double err = 0.0;
    for (int k = 0; k < 4; ++k) {
      int arg = -1;
      double dist = std::numeric_limits<double>::infinity();
      for (int j = 0; j < 4; ++j) {
        if (used[j]) continue;
        const double e = std::abs(su.d(k) - sv.d(j));
        if (e < dist) dist = e, arg = j;
      }
      used[arg] = true;
      perm[k] = arg;
      err = std::max(err, dist);
    }
    if (err >= best.error) continue;
    Real4 pv;
    Eigen::Vector4cd dv;
    for (int k = 0; k < 4; ++k) {
      pv.col(k) = sv.p.col(perm[k]);
      dv(k) = sv.d(perm[k]);
    }
    if (pv.determinant() < 0) pv.col(0) = -pv.col(0);
    Eigen::Vector4cd su_sqrt;
    for (int k = 0; k < 4; ++k) su_sqrt(k) = std::sqrt(su.d(k));
    if (std::real(su_sqrt.prod()) < 0) su_sqrt(0) = -su_sqrt(0);
    Eigen::Vector4cd sv_sqrt;
    for (int k = 0; k < 4; ++k) sv_sqrt(k) = su_sqrt(k) * std::sqrt(dv(k) / su.d(k));
    const Mat4 pu_c = su.p.cast<cplx>(), pv_c = pv.cast<cplx>();
    const Mat4 qu = su.um * pu_c * su_sqrt.cwiseInverse().asDiagonal();
    const Mat4 qv = sv.um * pv_c * sv_sqrt.cwiseInverse().asDiagonal();
    const Mat4& b = magic_basis();
    best.k1 = b * qu * qv.transpose() * b.adjoint();
    best.k2 = b * pv_c * pu_c.transpose() * b.adjoint();
    best.error = err;
  }
  return best;
}

Circuit template_circuit(int cnots, double c1, double c2, double c3) {
  Circuit t(2);
  switch (cnots) {
    case 1: t.add(Gate::cnot(0, 1)); break;
    case 2:
      // exp(i(c1 XX + c2 ZZ))
      t.add(Gate::cnot(0, 1));
      t.add(Gate::rx(0, -2 * c1));
      t.add(Gate::rz(1, -2 * c2));
      t.add(Gate::cnot(0, 1));
      break;
    case 3:
      t.add(Gate::cnot(1, 0));
      t.add(Gate::rz(0, -2 * c3 - kPi / 2));
      t.add(Gate::ry(1, -2 * c1 + kPi / 2));
      t.add(Gate::cnot(0, 1));
      t.add(Gate::ry(1, 2 * c2 + kPi / 2));
      t.add(Gate::cnot(1, 0));
      break;
    default: break;
  }
  return t;
}

void append_remapped(Circuit& out, const Circuit& local, int q0, int q1) {
  for (Gate g : local.gates) {
    g.qubits[0] = g.qubits[0] == 0 ? q0 : q1;
    if (g.arity() == 2) g.qubits[1] = g.qubits[1] == 0 ? q0 : q1;
    out.add(std::move(g));
  }
}

void require_unitary(const Mat4& u, const char* who) {
  if (!is_unitary(u, 1e-8)) throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
}

}  // namespace

std::array<double, 3> weyl_coordinates(const Mat4& u) {
  require_unitary(u, "weyl_coordinates");
  std::array<double, 3> c = interaction_coefficients(u);
  for (double& x : c) {
    x = std::remainder(x, kPi / 2);
    if (x <= -kPi / 4) x += kPi / 2;
    x = std::abs(x);
  }
  std::sort(c.begin(), c.end(), std::greater<>());
  return c;
}

int min_cnot_count(const Mat4& u, double tol) {
  const auto [c1, c2, c3] = weyl_coordinates(u);
  if (c1 < tol && c2 < tol && c3 < tol) return 0;
  if (std::abs(c1 - kPi / 4) < tol && c2 < tol && c3 < tol) return 1;
  if (c3 < tol) return 2;
  return 3;
}

std::pair<Mat2, Mat2> kron_factor(const Mat4& k) {
  Mat4 r;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) r(2 * i1 + j1, 2 * i2 + j2) = k(2 * i1 + i2, 2 * j1 + j2);
  Eigen::JacobiSVD<Mat4> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s = std::sqrt(svd.singularValues()(0));
  Mat2 a, b;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      a(x, y) = s * svd.matrixU()(2 * x + y, 0);
      b(x, y) = s * std::conj(svd.matrixV()(2 * x + y, 0));
    }
  }
  const double na = std::sqrt(std::abs(a.determinant())), nb = std::sqrt(std::abs(b.determinant()));
  if (na > 0 && nb > 0) {
    a /= na;
    b /= nb;
  }
  return {a, b};
}

EulerZYZ euler_zyz(const Mat2& u) {
  const cplx det = u.determinant();
  EulerZYZ e;
  e.phase = std::arg(det) / 2;
  const Mat2 v = u * std::polar(1.0, -e.phase);
  const double cos_half = std::abs(v(1, 1)), sin_half = std::abs(v(1, 0));
  e.b = 2 * std::atan2(sin_half, cos_half);
  const double sum = cos_half > 1e-14 ? 2 * std::arg(v(1, 1)) : 0.0;
  const double diff = sin_half > 1e-14 ? 2 * std::arg(v(1, 0)) : 0.0;
  e.a = (sum + diff) / 2;
  e.c = (sum - diff) / 2;
  return e;
}

void append_single_qubit(Circuit& out, const Mat2& u, int q) {
  const EulerZYZ e = euler_zyz(u);
  auto emit = [&](Gate g) {
    g.angle = wrap_angle(g.angle);
    if (std::abs(g.angle) > 1e-12) out.add(g);
  };
  emit(Gate::rz(q, e.c));
  emit(Gate::ry(q, e.b));
  emit(Gate::rz(q, e.a));
}

void append_two_qubit(Circuit& out, const Mat4& u, int q0, int q1) {
  require_unitary(u, "decompose_two_qubit");
  const int cnots = min_cnot_count(u);
  if (cnots == 0) {
    const auto [a, b] = kron_factor(u);
    append_single_qubit(out, a, q0);
    append_single_qubit(out, b, q1);
    return;
  }
  const auto [c1, c2, c3] = weyl_coordinates(u);
  const Mat4 us = to_special(u);
  Match best;
  Circuit chosen;
  for (const double mirror : {1.0, -1.0}) {
    if (mirror < 0 && cnots < 3) break;
    const Circuit t = template_circuit(cnots, c1, c2, mirror * c3);
    const Match m = match_local(us, to_special(circuit_unitary(t)));
    if (m.error < best.error) {
      best = m;
      chosen = t;
    }
  }
  if (!(best.error < 1e-6)) {
    throw std::runtime_error("decompose_two_qubit: failed to match interaction spectrum");
  }
  const auto [a2, b2] = kron_factor(best.k2);
  const auto [a1, b1] = kron_factor(best.k1);
  append_single_qubit(out, a2, q0);
  append_single_qubit(out, b2, q1);
  append_remapped(out, chosen, q0, q1);
  append_single_qubit(out, a1, q0);
  append_single_qubit(out, b1, q1);
}

Circuit decompose_two_qubit(const Mat4& u) {
  Circuit c(2);
  append_two_qubit(c, u, 0, 1);
  return c;
}

}  // namespace qprep
