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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qprep/simulator.hpp"
#include "qprep/synthesis.hpp"
#include "qprep/two_qubit.hpp"

namespace qprep {
namespace {

Mat4 local_pair(std::mt19937_64& gen) {
  return Mat4(oracle::kron(oracle::haar_unitary(2, gen), oracle::haar_unitary(2, gen)));
}

Mat4 cnot01() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

// exp(i (a XX + b YY + c ZZ)) from its eigen-decomposition; the three terms commute.
Mat4 canonical_gate(double a, double b, double c) {
  const Mat4 xx = oracle::kron(oracle::pauli(1), oracle::pauli(1));
  const Mat4 yy = oracle::kron(oracle::pauli(2), oracle::pauli(2));
  const Mat4 zz = oracle::kron(oracle::pauli(3), oracle::pauli(3));
  const Mat4 h = a * xx + b * yy + c * zz;
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  const Eigen::Vector4cd phases = (es.eigenvalues().cast<cplx>() * cplx(0, 1)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double circuit_vs(const Circuit& c, const Mat4& u) {
  return oracle::unitary_overlap(oracle::circuit_matrix(c), u);
}

TEST(TwoQubit, WeylCoordinatesOfNamedGates) {
  const double q = kPi / 4;
  auto expect_coords = [](const Mat4& u, std::array<double, 3> want) {
    const auto c = weyl_coordinates(u);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(c[k], want[k], 1e-9) << k;
  };
  expect_coords(Mat4::Identity(), {0, 0, 0});
  expect_coords(cnot01(), {q, 0, 0});
  Mat4 swap = Mat4::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  expect_coords(swap, {q, q, q});
  expect_coords(canonical_gate(q, q, 0), {q, q, 0});
  expect_coords(canonical_gate(0.3, 0.2, 0.1), {0.3, 0.2, 0.1});
  EXPECT_THROW(weyl_coordinates(2.0 * Mat4::Identity()), std::invalid_argument);
}

TEST(TwoQubit, CnotCountAgreesWithTraceInvariant) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> ang(0.05, 0.7);
  for (int trial = 0; trial < 200; ++trial) {
    Mat4 core;
    switch (trial % 4) {
      case 0: core = Mat4::Identity(); break;
      case 1: core = cnot01(); break;
      case 2: core = canonical_gate(ang(gen), ang(gen), 0.0); break;
      default: core = Mat4(oracle::haar_unitary(4, gen)); break;
    }
    const Mat4 u = local_pair(gen) * core * local_pair(gen);
    const int expected = oracle::cnot_count_from_gamma(u);
    EXPECT_EQ(expected, trial % 4) << "oracle sanity, trial " << trial;
    EXPECT_EQ(min_cnot_count(u), expected) << "trial " << trial;
  }
}

TEST(TwoQubit, DecompositionReconstructsHaarUnitaries) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat4 u = oracle::haar_unitary(4, gen);
    const Circuit c = decompose_two_qubit(u);
    EXPECT_LE(c.cnot_gates(), 3u);
    EXPECT_GE(circuit_vs(c, u), 1.0 - 1e-8) << "trial " << trial;
  }
}

TEST(TwoQubit, DecompositionUsesMinimalCnots) {
  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> ang(0.05, 0.7);
  for (int trial = 0; trial < 60; ++trial) {
    const int cls = trial % 3;
    const Mat4 core = cls == 0 ? Mat4::Identity() : cls == 1 ? cnot01() : canonical_gate(ang(gen), ang(gen), 0);
    const Mat4 u = local_pair(gen) * core * local_pair(gen);
    const Circuit c = decompose_two_qubit(u);
    EXPECT_EQ(c.cnot_gates(), static_cast<std::size_t>(cls));
    EXPECT_GE(circuit_vs(c, u), 1.0 - 1e-8);
  }
}

TEST(TwoQubit, EmbeddingOnNonAdjacentReversedQubits) {
  std::mt19937_64 gen(53);
  const Mat4 u = oracle::haar_unitary(4, gen);
  Circuit c(4);
  append_two_qubit(c, u, 3, 1);
  EXPECT_GE(oracle::unitary_overlap(oracle::circuit_matrix(c), oracle::embed2(u, 3, 1, 4)), 1.0 - 1e-8);
}

TEST(TwoQubit, EulerAndKronFactor) {
  std::mt19937_64 gen(59);
  const Mat2 u = oracle::haar_unitary(2, gen);
  const EulerZYZ e = euler_zyz(u);
  const Mat2 rebuilt = std::exp(cplx(0, e.phase)) * oracle::rotation(3, e.a) * oracle::rotation(2, e.b) *
                       oracle::rotation(3, e.c);
  EXPECT_TRUE(rebuilt.isApprox(u, 1e-12));
  const Mat2 a = oracle::haar_unitary(2, gen), b = oracle::haar_unitary(2, gen);
  const auto [fa, fb] = kron_factor(oracle::kron(a, b));
  EXPECT_NEAR(oracle::unitary_overlap(oracle::kron(fa, fb), oracle::kron(a, b)), 1.0, 1e-12);
  Circuit c(1);
  append_single_qubit(c, Mat2::Identity(), 0);
  EXPECT_TRUE(c.empty());
}

TEST(ExactPrepare, PreparesRandomStates) {
  for (int n = 1; n <= 7; ++n) {
    const Statevector target = random_statevector(n, 60 + n);
    const Circuit c = exact_prepare(target);
    const Eigen::VectorXcd out = oracle::circuit_matrix(c).col(0);
    double overlap = std::norm(oracle::to_vector(target).dot(out));
    EXPECT_GE(overlap, 1.0 - 1e-10) << "n=" << n;
    const std::size_t bound = n == 1 ? 0 : 2 * ((std::size_t{1} << n) - 2);
    EXPECT_EQ(c.cnot_gates(), bound) << "n=" << n;
  }
}

TEST(ExactPrepare, EdgeCases) {
  EXPECT_TRUE(exact_prepare(Statevector(4)).empty());
  EXPECT_THROW(exact_prepare(Statevector(0)), std::invalid_argument);
  Statevector unnormalized(2);
  unnormalized[0] = 2.0;
  EXPECT_THROW(exact_prepare(unnormalized), std::invalid_argument);
  const Statevector one = Statevector::basis(3, 5);
  EXPECT_NEAR(fidelity(simulate(exact_prepare(one)), one), 1.0, 1e-12);
}

TEST(Synthesis, CountTranspileAndReport) {
  std::mt19937_64 gen(61);
  Circuit c(3);
  c.add(Gate::u2q(0, 1, local_pair(gen) * cnot01() * local_pair(gen)));
  c.add(Gate::cnot(1, 2));
  c.add(Gate::u2q(2, 0, Mat4(oracle::haar_unitary(4, gen))));
  EXPECT_EQ(count_cnots(c), 1u + 1u + 3u);
  const Circuit basis = transpile_to_basis(c);
  for (const Gate& g : basis.gates) EXPECT_NE(g.kind, GateKind::U2Q);
  EXPECT_EQ(basis.cnot_gates(), 5u);
  EXPECT_GE(oracle::unitary_overlap(oracle::circuit_matrix(basis), oracle::circuit_matrix(c)), 1.0 - 1e-8);

  const Statevector target = simulate(c);
  const SynthesisReport r = synthesis_report(c, target);
  EXPECT_EQ(r.cnot_count, 5u);
  EXPECT_EQ(r.total_gates, basis.size());
  EXPECT_EQ(r.depth, basis.depth());
  EXPECT_NEAR(r.reconstruction_fidelity, 1.0, 1e-10);
  EXPECT_EQ(synthesis_csv_header(), "method,n_qubits,cnots,depth,fidelity");
  EXPECT_EQ(synthesis_csv_row("exact", 3, {4, 10, 6, 0.5}), "exact,3,4,6,0.5000000000");
}

}  // namespace
}  // namespace qprep
