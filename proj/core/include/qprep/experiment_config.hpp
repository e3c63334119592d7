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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qprep/adversarial.hpp"
#include "qprep/encoding.hpp"
#include "qprep/preparer.hpp"
#include "qprep/qvc.hpp"

namespace qprep {

struct DatasetSpec {
  /// "shapes" or "idx".
  std::string source = "shapes";
  std::filesystem::path images;
  std::filesystem::path labels;
  /// IDX only: classes to keep, relabelled in order. Empty keeps all.
  std::vector<int> classes;
  std::size_t n_train = 600;
  std::size_t n_validation = 100;
  std::size_t n_test = 500;
};

struct PrepSpec {
  std::vector<PrepMethod> methods{PrepMethod::Exact, PrepMethod::Mps, PrepMethod::Variational,
                                  PrepMethod::Gasp};
  double fidelity_target = 0.7;
  MpsPrepConfig mps;
  VarPrepConfig variational;
  GaspConfig gasp;
};

struct ModelSpec {
  int layers = 4;
  int classes = 2;
  /// Independent initializations; the one with the best validation accuracy
  /// (then lowest validation loss) is kept.
  int restarts = 1;
};

struct SurrogateSpec {
  int hidden = 32;
  TrainConfig train{.learning_rate = 1e-2, .epochs = 40, .batch_size = 32, .seed = 0,
                    .eval_every = 0};
};

struct AttackSpec {
  std::vector<double> epsilons{0.0, 0.05, 0.1};
  int steps = 3;
  /// "surrogate" or "qvc:<method>".
  std::string source = "surrogate";
  PgdStepRule step_rule = PgdStepRule::Sign;
  std::size_t n_examples = 200;
};

struct NoiseSpec {
  std::vector<double> strengths{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0};
  std::size_t n_examples = 200;
};

struct DepolSpec {
  std::vector<double> p{0.0, 1e-3, 1e-2, 1e-1};
  int trajectories = 200;
  std::size_t n_examples = 100;
};

struct DepthSpec {
  std::size_t n_examples = 100;
};

/// Everything an experiment run depends on. Every stochastic stage derives
/// its stream from `seed`.
struct ExperimentConfig {
  std::string name = "experiment";
  uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  DatasetSpec dataset;
  EncodingMode encoding = EncodingMode::HorizontalPair;
  PrepSpec prep;
  ModelSpec model;
  TrainConfig train{.learning_rate = 1e-3, .epochs = 10, .batch_size = 32, .seed = 0,
                    .eval_every = 50};
  SurrogateSpec surrogate;
  AttackSpec attack;
  NoiseSpec noise;
  DepolSpec depol;
  DepthSpec depth;
  int threads = 1;

  /// Throws std::invalid_argument on empty grids, unknown methods or
  /// inconsistent sizes.
  void validate() const;
};

/// Parses a config. "seed" is mandatory; relative dataset paths resolve
/// against `base_dir`. Throws std::invalid_argument on bad input.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical form including every default.
nlohmann::json config_to_json(const ExperimentConfig& c);

/// FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

}  // namespace qprep
