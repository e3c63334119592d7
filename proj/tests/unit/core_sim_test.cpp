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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qprep/circuit_io.hpp"
#include "qprep/gradient.hpp"
#include "qprep/noise.hpp"
#include "qprep/rng.hpp"
#include "qprep/simulator.hpp"

namespace qprep {
namespace {

Circuit random_circuit(int n, int n_gates, std::mt19937_64& gen, bool with_u2q = true) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  Circuit c(n);
  for (int k = 0; k < n_gates; ++k) {
    const int kind = static_cast<int>(gen() % (n > 1 ? (with_u2q ? 7 : 6) : 5));
    const int q = qubit(gen);
    int r = qubit(gen);
    while (n > 1 && r == q) r = qubit(gen);
    switch (kind) {
      case 0: c.add(Gate::x(q)); break;
      case 1: c.add(Gate::sx(q)); break;
      case 2: c.add(Gate::rx(q, angle(gen))); break;
      case 3: c.add(Gate::ry(q, angle(gen))); break;
      case 4: c.add(Gate::rz(q, angle(gen))); break;
      case 5: c.add(Gate::cnot(q, r)); break;
      default: c.add(Gate::u2q(q, r, Mat4(oracle::haar_unitary(4, gen)))); break;
    }
  }
  return c;
}

double max_abs_diff(const Statevector& a, const Eigen::VectorXcd& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) d = std::max(d, std::abs(a[k] - b[static_cast<Eigen::Index>(k)]));
  return d;
}

TEST(Statevector, ConstructionAndValidation) {
  const Statevector zero(3);
  EXPECT_EQ(zero.dim(), 8u);
  EXPECT_EQ(zero[0], cplx(1.0));
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
  const Statevector s = Statevector::from_amplitudes({1.0, 1.0}, true);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
  EXPECT_THROW(Statevector::from_amplitudes({0.0, 0.0}, true), std::invalid_argument);
  EXPECT_EQ(Statevector::basis(2, 3)[3], cplx(1.0));
  EXPECT_THROW(Statevector::basis(2, 4), std::out_of_range);
}

TEST(Statevector, FidelityProperties) {
  const Statevector a = random_statevector(4, 1), b = random_statevector(4, 2);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-14);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
  EXPECT_GE(fidelity(a, b), 0.0);
  EXPECT_LE(fidelity(a, b), 1.0);
  EXPECT_NEAR(random_statevector(5, 9).norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(random_statevector(5, 9), random_statevector(5, 9));
}

TEST(Gate, MatricesMatchClosedForms) {
  for (double theta : {-2.1, 0.0, 0.7, 3.0}) {
    EXPECT_TRUE(single_qubit_matrix(Gate::rx(0, theta)).isApprox(oracle::rotation(1, theta), 1e-14));
    EXPECT_TRUE(single_qubit_matrix(Gate::ry(0, theta)).isApprox(oracle::rotation(2, theta), 1e-14));
    EXPECT_TRUE(single_qubit_matrix(Gate::rz(0, theta)).isApprox(oracle::rotation(3, theta), 1e-14));
  }
  const Mat2 sx = single_qubit_matrix(Gate::sx(0));
  EXPECT_TRUE((sx * sx).isApprox(oracle::pauli(1), 1e-14));
}

TEST(Gate, ValidationAndInverse) {
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 2.0;
  EXPECT_THROW(Gate::u2q(0, 1, bad), std::invalid_argument);
  EXPECT_THROW(Gate::cnot(1, 1).check(2), std::invalid_argument);
  EXPECT_THROW(Gate::x(2).check(2), std::out_of_range);
  EXPECT_EQ(gate_kind_from_name(gate_kind_name(GateKind::SX)), GateKind::SX);
  EXPECT_THROW(gate_kind_from_name("h"), std::invalid_argument);

  std::mt19937_64 gen(3);
  const Circuit c = random_circuit(3, 30, gen);
  const MatX u = oracle::circuit_matrix(c) * oracle::circuit_matrix(inverse(c));
  EXPECT_NEAR(oracle::unitary_overlap(u, MatX::Identity(8, 8)), 1.0, 1e-12);
}

TEST(Simulator, MatchesDenseOracleOnRandomCircuits) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const Circuit c = random_circuit(n, 25, gen);
    const Statevector input = random_statevector(n, 100 + trial);
    const Statevector out = simulate(c, input);
    const Eigen::VectorXcd expected = oracle::circuit_matrix(c) * oracle::to_vector(input);
    EXPECT_LT(max_abs_diff(out, expected), 1e-12) << "trial " << trial;
  }
}

TEST(Simulator, AdjointUndoesGate) {
  std::mt19937_64 gen(5);
  const Circuit c = random_circuit(4, 40, gen);
  Statevector s = random_statevector(4, 8);
  const Statevector s0 = s;
  for (const Gate& g : c.gates) apply_gate_inplace(s.amplitudes(), 4, g);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) apply_gate_adjoint_inplace(s.amplitudes(), 4, *it);
  EXPECT_NEAR(fidelity(s, s0), 1.0, 1e-12);
}

TEST(Simulator, RejectsBadInputs) {
  EXPECT_THROW(apply_gate(Statevector(2), Gate::x(2)), std::out_of_range);
  EXPECT_THROW(simulate(Circuit(3), Statevector(2)), std::invalid_argument);
  const int window[] = {0, 2};
  EXPECT_THROW(reduced_density_matrix(Statevector(3), window), std::invalid_argument);
  EXPECT_THROW(reduced_density_matrix(Statevector(3), std::span<const int>{}), std::invalid_argument);
}

TEST(Simulator, ReducedDensityMatrixMatchesPartialTrace) {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Statevector s = random_statevector(n, 500 + trial);
    const int first = trial % n;
    const int len = 1 + (trial / 4) % (n - first);
    std::vector<int> sites;
    for (int k = 0; k < len; ++k) sites.push_back(first + k);
    const MatX rho = reduced_density_matrix(s, sites);
    worst = std::max(worst, (rho - oracle::partial_trace(s, sites)).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Simulator, ExpectationsMatchOracle) {
  const Statevector s = random_statevector(3, 21);
  const Eigen::VectorXcd v = oracle::to_vector(s);
  const RVec z = z_expectations(s, 3);
  for (int q = 0; q < 3; ++q) {
    const double expected = (v.adjoint() * oracle::embed1(oracle::pauli(3), q, 3) * v)(0, 0).real();
    EXPECT_NEAR(z[q], expected, 1e-13);
    EXPECT_NEAR(expectation(s, {q}), expected, 1e-13);
  }
  EXPECT_DOUBLE_EQ(expectation(Statevector(2), {1}), 1.0);
}

// Sum of squared distances between <Z_j> and fixed targets, a loss that
// exercises every observable.
ExpectationLoss squared_loss(std::vector<double> targets) {
  return [targets](std::span<const double> e, std::span<double> g) {
    double v = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      v += (e[j] - targets[j]) * (e[j] - targets[j]);
      g[j] = 2 * (e[j] - targets[j]);
    }
    return v;
  };
}

TEST(Gradient, AdjointMatchesFiniteDifferences) {
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Circuit c = random_circuit(n, 12 + trial % 10, gen, false);
    if (c.parameter_count() == 0) continue;
    const Statevector input = random_statevector(n, 900 + trial);
    const ExpectationLoss loss = squared_loss(std::vector<double>(n, 0.3));
    const GradientResult r = circuit_gradient(c, c.parameters(), input, n, loss);
    auto f = [&](const std::vector<double>& p) {
      Circuit cc = c;
      cc.set_parameters(p);
      const RVec e = z_expectations(simulate(cc, input), n);
      RVec g(n);
      return loss(e, g);
    };
    worst = std::max(worst, oracle::relative_error(r.gradient, oracle::finite_difference(f, c.parameters())));
  }
  EXPECT_LE(worst, 1e-5);
}

TEST(Gradient, FidelityLossGradient) {
  std::mt19937_64 gen(19);
  const Circuit c = random_circuit(3, 20, gen, false);
  const Statevector target = random_statevector(3, 4);
  const GradientResult r = fidelity_loss_gradient(c, c.parameters(), target);
  auto f = [&](const std::vector<double>& p) {
    Circuit cc = c;
    cc.set_parameters(p);
    return 1.0 - fidelity(target, simulate(cc));
  };
  EXPECT_NEAR(r.value, f(c.parameters()), 1e-13);
  EXPECT_LE(oracle::relative_error(r.gradient, oracle::finite_difference(f, c.parameters())), 1e-5);
  EXPECT_THROW(fidelity_loss_gradient(c, RVec(c.parameter_count() + 1), target), std::invalid_argument);
}

TEST(Gradient, InputCotangent) {
  // f(psi_in) = <out|Z_0|out>; df = 2 Re<cot|d psi_in> along a random direction.
  std::mt19937_64 gen(23);
  const Circuit c = random_circuit(3, 15, gen);
  const Statevector in = random_statevector(3, 6);
  const Statevector dir = random_statevector(3, 7);
  const Statevector out = simulate(c, in);
  CVec lambda(out.amplitudes().begin(), out.amplitudes().end());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if ((k >> 2) & 1u) lambda[k] = -lambda[k];
  }
  CVec cot;
  adjoint_backprop(c, out, lambda, &cot);
  // Evaluated on raw (unnormalized) amplitudes so f is quadratic in t.
  auto f = [&](double t) {
    CVec a(in.amplitudes().begin(), in.amplitudes().end());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += t * dir[k];
    for (const Gate& g : c.gates) apply_gate_inplace(a, 3, g);
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) v += ((k >> 2) & 1u ? -1.0 : 1.0) * std::norm(a[k]);
    return v;
  };
  const double h = 1e-6;
  const double fd = (f(h) - f(-h)) / (2 * h);
  double analytic = 0.0;
  for (std::size_t k = 0; k < cot.size(); ++k) analytic += 2 * (std::conj(cot[k]) * dir[k]).real();
  EXPECT_NEAR(analytic, fd, 1e-6);
}

TEST(Noise, ZeroProbabilityIsNoiseless) {
  std::mt19937_64 gen(29);
  const Circuit c = random_circuit(3, 20, gen);
  EXPECT_EQ(sample_depolarizing(c, Statevector(3), 0.0, 1), simulate(c));
  EXPECT_THROW(sample_depolarizing(c, Statevector(3), 1.5, 1), std::invalid_argument);
  EXPECT_EQ(sample_depolarizing(c, Statevector(3), 0.3, 42), sample_depolarizing(c, Statevector(3), 0.3, 42));
}

TEST(Noise, TrajectoriesMatchChannelOracle) {
  // RY(0)=1.1, RX(1)=0.4, CNOT(0,1), RY(1)=-0.8: one noisy location.
  Circuit c(2);
  c.add(Gate::ry(0, 1.1)).add(Gate::rx(1, 0.4)).add(Gate::cnot(0, 1)).add(Gate::ry(1, -0.8));
  const double p = 0.3;
  Circuit pre(2), post(2);
  pre.gates.assign(c.gates.begin(), c.gates.begin() + 3);
  post.gates.assign(c.gates.begin() + 3, c.gates.end());
  const Eigen::VectorXcd v = oracle::circuit_matrix(pre) * oracle::to_vector(Statevector(2));
  const Mat4 rho0 = v * v.adjoint();
  const Mat4 tail = oracle::circuit_matrix(post);
  const Mat4 rho = tail * oracle::depolarize(rho0, p) * tail.adjoint();

  const int trajectories = 20000;
  std::array<double, 4> mean{}, sq{};
  for (int t = 0; t < trajectories; ++t) {
    const Statevector s = sample_depolarizing(c, Statevector(2), p, derive_seed(77, t));
    for (int k = 0; k < 4; ++k) {
      const double pk = std::norm(s[k]);
      mean[k] += pk;
      sq[k] += pk * pk;
    }
  }
  for (int k = 0; k < 4; ++k) {
    const double m = mean[k] / trajectories;
    const double sigma = std::sqrt((sq[k] / trajectories - m * m) / trajectories);
    EXPECT_LE(std::abs(m - rho(k, k).real()), 3 * sigma + 1e-12) << "basis state " << k;
  }
}

TEST(Circuit, ParametersDepthAndCounts) {
  Circuit c(3);
  c.add(Gate::rx(0, 0.1)).add(Gate::cnot(0, 1)).add(Gate::rz(2, 0.2)).add(Gate::cnot(1, 2)).add(Gate::x(0));
  EXPECT_EQ(c.parameter_count(), 2u);
  EXPECT_EQ(c.parameters(), (RVec{0.1, 0.2}));
  EXPECT_EQ(c.cnot_gates(), 2u);
  EXPECT_EQ(c.depth(), 3);
  EXPECT_EQ(Circuit(2).depth(), 0);
  EXPECT_THROW(c.set_parameters(RVec{1.0}), std::invalid_argument);
  EXPECT_THROW(c.add(Gate::x(3)), std::out_of_range);
  c.set_parameters(RVec{0.5, 0.6});
  EXPECT_EQ(c.gates[2].angle, 0.6);
}

TEST(CircuitIo, JsonRoundTripAndQasm) {
  std::mt19937_64 gen(31);
  const Circuit c = random_circuit(4, 30, gen);
  const Circuit back = circuit_from_json(nlohmann::json::parse(circuit_to_json(c).dump()), 4);
  ASSERT_EQ(back.size(), c.size());
  EXPECT_NEAR(oracle::unitary_overlap(oracle::circuit_matrix(back), oracle::circuit_matrix(c)), 1.0, 1e-12);
  const Circuit wrapped = circuit_from_json({{"n_qubits", 4}, {"gates", circuit_to_json(c)}});
  EXPECT_EQ(wrapped.n_qubits, 4);
  EXPECT_THROW(circuit_to_qasm(c), std::invalid_argument);

  Circuit basis(2);
  basis.add(Gate::sx(0)).add(Gate::cnot(0, 1)).add(Gate::rz(1, 0.25));
  const std::string qasm = circuit_to_qasm(basis);
  EXPECT_NE(qasm.find("OPENQASM 2.0;"), std::string::npos);
  EXPECT_NE(qasm.find("qreg q[2];"), std::string::npos);
  EXPECT_NE(qasm.find("cx q[0],q[1];"), std::string::npos);

  EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"([{"kind":"h","qubits":[0],"params":[]}])")),
               std::invalid_argument);
  EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"([{"kind":"rx","qubits":[0]}])")),
               std::invalid_argument);
}

}  // namespace
}  // namespace qprep
