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

#include "qprep/mps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qprep {

namespace {

using RMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kSingularCut = 1e-14;

// Row-major views of a site tensor as (left*2) x right or left x (2*right).
Eigen::Map<RMat> left_view(SiteTensor& t) { return {t.data.data(), t.left * 2, t.right}; }
Eigen::Map<const RMat> left_view(const SiteTensor& t) {
  return {t.data.data(), t.left * 2, t.right};
}
Eigen::Map<RMat> right_view(SiteTensor& t) { return {t.data.data(), t.left, 2 * t.right}; }
Eigen::Map<const RMat> right_view(const SiteTensor& t) {
  return {t.data.data(), t.left, 2 * t.right};
}

SiteTensor from_left_matrix(const RMat& m, int left) {
  SiteTensor t(left, static_cast<int>(m.cols()));
  left_view(t) = m;
  return t;
}

SiteTensor from_right_matrix(const RMat& m, int right) {
  SiteTensor t(static_cast<int>(m.rows()), right);
  right_view(t) = m;
  return t;
}

int kept_rank(const Eigen::VectorXd& s, int max_bond) {
  int keep = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > kSingularCut) ++keep;
  }
  keep = std::max(keep, 1);
  if (max_bond != kUnlimitedBond) keep = std::min(keep, max_bond);
  return keep;
}

// Makes site i a left isometry and pushes the remainder into site i+1.
void left_orthonormalize(MpsState& mps, int i) {
  SiteTensor& a = mps.sites[i];
  const RMat m = left_view(a);
  Eigen::HouseholderQR<RMat> qr(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  const RMat q = qr.householderQ() * RMat::Identity(m.rows(), k);
  const RMat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const int left = a.left;
  a = from_left_matrix(q, left);
  SiteTensor& b = mps.sites[i + 1];
  const RMat next = r * right_view(b);
  b = from_right_matrix(next, b.right);
}

// Makes site i a right isometry and pushes the remainder into site i-1.
void right_orthonormalize(MpsState& mps, int i) {
  SiteTensor& a = mps.sites[i];
  const RMat m = right_view(a);
  const RMat mh = m.adjoint();
  Eigen::HouseholderQR<RMat> qr(mh);
  const Eigen::Index k = std::min(mh.rows(), mh.cols());
  const RMat q = qr.householderQ() * RMat::Identity(mh.rows(), k);
  const RMat r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const int right = a.right;
  a = from_right_matrix(q.adjoint(), right);
  SiteTensor& b = mps.sites[i - 1];
  const RMat prev = left_view(b) * r.adjoint();
  b = from_left_matrix(prev, b.left);
}

void check_site(const MpsState& mps, int site, const char* who) {
  if (site < 0 || site >= mps.n_sites()) {
    throw std::out_of_range(std::string(who) + ": site out of range");
  }
}

// theta[l, s0, s1, r] for the pair (site, site+1), as (l*4) x r row-major
// with the physical pair index 2*s0 + s1.
RMat pair_tensor(const MpsState& mps, int site) {
  const SiteTensor& a = mps.sites[site];
  const SiteTensor& b = mps.sites[site + 1];
  const RMat ab = left_view(a) * right_view(b);  // (l*2) x (2*r)
  RMat theta(a.left * 4, b.right);
  for (int l = 0; l < a.left; ++l)
    for (int s0 = 0; s0 < 2; ++s0)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int r = 0; r < b.right; ++r)
          theta(l * 4 + 2 * s0 + s1, r) = ab(l * 2 + s0, s1 * b.right + r);
  return theta;
}

}  // namespace

std::vector<int> MpsState::bond_dims() const {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < sites.size(); ++i) out.push_back(sites[i].right);
  return out;
}

int MpsState::max_bond() const {
  int m = 1;
  for (int b : bond_dims()) m = std::max(m, b);
  return m;
}

MpsFactorization mps_from_statevector(const Statevector& state, int max_bond) {
  if (max_bond < 1 && max_bond != kUnlimitedBond) {
    throw std::invalid_argument("mps_from_statevector: max_bond must be >= 1");
  }
  const int n = state.n_qubits();
  if (n < 1) throw std::invalid_argument("mps_from_statevector: empty register");
  MpsFactorization out;
  out.mps.sites.reserve(n);
  RMat m = Eigen::Map<const RMat>(state.amplitudes().data(), 2, static_cast<Eigen::Index>(state.dim() / 2));
  int left = 1;
  for (int i = 0; i < n - 1; ++i) {
    Eigen::BDCSVD<RMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int keep = kept_rank(svd.singularValues(), max_bond);
    const RMat u = svd.matrixU().leftCols(keep);
    const RMat rest = svd.singularValues().head(keep).cast<cplx>().asDiagonal() *
                      svd.matrixV().leftCols(keep).adjoint();
    out.mps.sites.push_back(from_left_matrix(u, left));
    left = keep;
    m = Eigen::Map<const RMat>(rest.data(), keep * 2, rest.cols() / 2);
  }
  SiteTensor last(left, 1);
  left_view(last) = m;
  const double norm = left_view(last).norm();
  if (!(norm > 0.0)) throw std::invalid_argument("mps_from_statevector: zero state");
  left_view(last) /= norm;
  out.mps.sites.push_back(std::move(last));
  out.mps.canonical_center = n - 1;
  out.fidelity = n <= 24 ? fidelity(state, mps_to_statevector(out.mps)) : 1.0;
  return out;
}

Statevector mps_to_statevector(const MpsState& mps) {
  const int n = mps.n_sites();
  if (n < 1) throw std::invalid_argument("mps_to_statevector: empty MPS");
  if (n > 24) throw std::length_error("mps_to_statevector: more than 2^24 amplitudes");
  RMat v = RMat::Ones(1, 1);  // (2^i) x bond
  for (const SiteTensor& t : mps.sites) {
    if (t.left != v.cols()) throw std::invalid_argument("mps_to_statevector: bond mismatch");
    const RMat next = v * right_view(t);  // (2^i) x (2*r)
    v = Eigen::Map<const RMat>(next.data(), next.rows() * 2, t.right);
  }
  CVec amps(v.data(), v.data() + v.size());
  return Statevector::from_amplitudes(std::move(amps), true);
}

void canonicalize(MpsState& mps, int center) {
  check_site(mps, center, "canonicalize");
  for (int i = 0; i < center; ++i) left_orthonormalize(mps, i);
  for (int i = mps.n_sites() - 1; i > center; --i) right_orthonormalize(mps, i);
  mps.canonical_center = center;
}

void move_center(MpsState& mps, int center) {
  check_site(mps, center, "move_center");
  if (!mps.canonical_center) {
    canonicalize(mps, center);
    return;
  }
  int c = *mps.canonical_center;
  while (c < center) left_orthonormalize(mps, c++);
  while (c > center) right_orthonormalize(mps, c--);
  mps.canonical_center = center;
}

double isometry_error(const MpsState& mps) {
  if (!mps.canonical_center) throw std::invalid_argument("isometry_error: MPS is not canonical");
  const int center = *mps.canonical_center;
  double err = 0.0;
  for (int i = 0; i < mps.n_sites(); ++i) {
    if (i == center) continue;
    const SiteTensor& t = mps.sites[i];
    RMat g;
    if (i < center) {
      g = left_view(t).adjoint() * left_view(t);
    } else {
      g = right_view(t) * right_view(t).adjoint();
    }
    err = std::max(err, (g - RMat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  return err;
}

Mat4 pair_density_matrix(const MpsState& mps, int site) {
  check_site(mps, site, "pair_density_matrix");
  check_site(mps, site + 1, "pair_density_matrix");
  if (!mps.canonical_center || (*mps.canonical_center != site && *mps.canonical_center != site + 1)) {
    throw std::invalid_argument("pair_density_matrix: canonical center must lie on the window");
  }
  const RMat theta = pair_tensor(mps, site);
  const int left = mps.sites[site].left;
  Mat4 rho = Mat4::Zero();
  for (int l = 0; l < left; ++l) {
    const auto block = theta.middleRows(l * 4, 4);
    rho += block * block.adjoint();
  }
  return rho;
}

void apply_two_site(MpsState& mps, int site, const Mat4& u) {
  check_site(mps, site, "apply_two_site");
  check_site(mps, site + 1, "apply_two_site");
  if (!mps.canonical_center || (*mps.canonical_center != site && *mps.canonical_center != site + 1)) {
    throw std::invalid_argument("apply_two_site: canonical center must lie on the window");
  }
  RMat theta = pair_tensor(mps, site);
  const int left = mps.sites[site].left, right = mps.sites[site + 1].right;
  for (int l = 0; l < left; ++l) theta.middleRows(l * 4, 4) = u * theta.middleRows(l * 4, 4);
  // Regroup to (l*2 + s0) x (s1*right + r).
  RMat m(left * 2, 2 * right);
  for (int l = 0; l < left; ++l)
    for (int s0 = 0; s0 < 2; ++s0)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int r = 0; r < right; ++r) m(l * 2 + s0, s1 * right + r) = theta(l * 4 + 2 * s0 + s1, r);
  Eigen::BDCSVD<RMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int keep = kept_rank(svd.singularValues(), kUnlimitedBond);
  mps.sites[site] = from_left_matrix(svd.matrixU().leftCols(keep), left);
  const RMat rest = svd.singularValues().head(keep).cast<cplx>().asDiagonal() *
                    svd.matrixV().leftCols(keep).adjoint();
  mps.sites[site + 1] = from_right_matrix(rest, right);
  mps.canonical_center = site + 1;
}

cplx zero_amplitude(const MpsState& mps) {
  RMat v = RMat::Ones(1, 1);
  for (const SiteTensor& t : mps.sites) {
    RMat a0(t.left, t.right);
    for (int l = 0; l < t.left; ++l)
      for (int r = 0; r < t.right; ++r) a0(l, r) = t(l, 0, r);
    v = v * a0;
  }
  return v(0, 0);
}

}  // namespace qprep
