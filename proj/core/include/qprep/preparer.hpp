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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "qprep/gasp.hpp"
#include "qprep/mps_prep.hpp"
#include "qprep/var_prep.hpp"

namespace qprep {

struct PrepSettings {
  PrepMethod method = PrepMethod::Exact;
  double fidelity_target = 0.6;
  MpsPrepConfig mps;
  VarPrepConfig variational;
  GaspConfig gasp;
  uint64_t seed = 0;
};

/// Dispatches to the configured method. The exact method ignores the
/// fidelity target. `item_seed` feeds the stochastic methods.
PrepResult prepare_state(const Statevector& target, const PrepSettings& settings,
                         uint64_t item_seed);

/// 64-bit FNV-1a over the amplitude bit patterns.
uint64_t state_fingerprint(const Statevector& s);

/// Prepares states on demand and memoizes them by content, so a repeated
/// input always maps to the same circuit. The per-item seed is derived from
/// the settings seed and the fingerprint, never from call order. Thread-safe.
class CachedPreparer {
 public:
  struct Entry {
    Statevector prepared;
    PrepResult result;
  };

  explicit CachedPreparer(PrepSettings settings) : settings_(std::move(settings)) {}

  const Entry& get(const Statevector& target);

  const PrepSettings& settings() const { return settings_; }
  std::size_t cache_size() const;

 private:
  PrepSettings settings_;
  mutable std::mutex mutex_;
  std::map<uint64_t, std::shared_ptr<const Entry>> cache_;
};

}  // namespace qprep
