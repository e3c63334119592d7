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

#include "qprep/preparer.hpp"

#include <chrono>
#include <cstring>

#include "qprep/simulator.hpp"
#include "qprep/synthesis.hpp"

namespace qprep {

PrepResult prepare_state(const Statevector& target, const PrepSettings& settings,
                         uint64_t item_seed) {
  switch (settings.method) {
    case PrepMethod::Exact: {
      const auto start = std::chrono::steady_clock::now();
      PrepResult r;
      r.circuit = exact_prepare(target);
      r.report = measure_preparation("exact", r.circuit, target, settings.fidelity_target, 0);
      r.report.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
    case PrepMethod::Mps: {
      MpsPrepConfig c = settings.mps;
      c.fidelity_target = settings.fidelity_target;
      return mps_prepare(target, c);
    }
    case PrepMethod::Variational: {
      VarPrepConfig c = settings.variational;
      c.fidelity_target = settings.fidelity_target;
      return variational_prepare(target, c, item_seed);
    }
    case PrepMethod::Gasp: {
      GaspConfig c = settings.gasp;
      c.fidelity_target = settings.fidelity_target;
      return gasp_prepare(target, c, item_seed).prep;
    }
  }
  throw std::invalid_argument("prepare_state: unknown method");
}

uint64_t state_fingerprint(const Statevector& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<uint64_t>(s.n_qubits()));
  for (const cplx& a : s.amplitudes()) {
    const double parts[2] = {a.real() + 0.0, a.imag() + 0.0};  // folds -0.0 into 0.0
    for (double p : parts) {
      uint64_t bits;
      std::memcpy(&bits, &p, sizeof bits);
      feed(bits);
    }
  }
  return h;
}

const CachedPreparer::Entry& CachedPreparer::get(const Statevector& target) {
  const uint64_t key = state_fingerprint(target);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  auto entry = std::make_shared<Entry>(Entry{target, {}});
  entry->result = prepare_state(target, settings_, derive_seed(settings_.seed, key));
  entry->prepared = simulate(entry->result.circuit);
  std::lock_guard lock(mutex_);
  // A concurrent computation of the same key produced an identical entry.
  auto [it, inserted] = cache_.emplace(key, std::move(entry));
  return *it->second;
}

std::size_t CachedPreparer::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace qprep
