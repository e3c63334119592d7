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

#include <benchmark/benchmark.h>

#include <random>

#include "qprep/mps.hpp"
#include "qprep/mps_prep.hpp"
#include "qprep/synthesis.hpp"
#include "qprep/two_qubit.hpp"

namespace qprep {
namespace {

Mat4 random_unitary(std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Mat4 z;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) z(r, c) = cplx(nd(gen), nd(gen));
  return Eigen::HouseholderQR<Mat4>(z).householderQ();
}

void BM_TwoQubitDecomposition(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::vector<Mat4> us;
  for (int i = 0; i < 64; ++i) us.push_back(random_unitary(gen));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose_two_qubit(us[k++ % us.size()]));
}
BENCHMARK(BM_TwoQubitDecomposition);

void BM_ExactPrepare(benchmark::State& state) {
  const Statevector s = random_statevector(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(exact_prepare(s));
}
BENCHMARK(BM_ExactPrepare)->DenseRange(3, 9, 2);

void BM_MpsFromStatevector(benchmark::State& state) {
  const Statevector s = random_statevector(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(mps_from_statevector(s, 2));
}
BENCHMARK(BM_MpsFromStatevector)->DenseRange(5, 13, 2);

void BM_DisentangleSweep(benchmark::State& state) {
  const Statevector s = random_statevector(static_cast<int>(state.range(0)), 6);
  const MpsState mps = mps_from_statevector(s, 2).mps;
  for (auto _ : state) benchmark::DoNotOptimize(disentangle_sweep(mps));
}
BENCHMARK(BM_DisentangleSweep)->DenseRange(5, 13, 2);

}  // namespace
}  // namespace qprep
