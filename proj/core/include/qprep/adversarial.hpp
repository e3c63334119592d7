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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qprep/classifier.hpp"
#include "qprep/datasets.hpp"

namespace qprep {

enum class PgdStepRule {
  /// delta <- clamp(delta + alpha * sign(grad)): steepest ascent in l-inf.
  Sign,
  /// delta <- clamp(delta + alpha * grad): the raw-gradient form.
  Gradient,
};

struct AttackConfig {
  double epsilon = 0.0;
  int steps = 3;
  /// Defaults to epsilon / 3.
  std::optional<double> alpha;
  uint64_t seed = 0;
  PgdStepRule step_rule = PgdStepRule::Sign;

  double step_size() const { return alpha.value_or(epsilon / 3.0); }
  void validate() const;
};

/// Called after the random start (iteration 0) and after every projected step.
using PgdObserver = std::function<void(int iteration, std::span<const double> delta)>;

/// Untargeted l-inf PGD on -log p(label | x + delta): delta_0 uniform in the
/// epsilon box, then `steps` projected ascent steps. Pixels are not clipped to
/// [0, 1]. epsilon = 0 returns an exact zero vector. Throws
/// std::invalid_argument when the classifier has no input gradients.
RVec pgd_attack(const Classifier& model, const Image& x, int label, const AttackConfig& config,
                const PgdObserver& observer = {});

Image perturb(const Image& x, std::span<const double> delta);

struct TransferRow {
  std::string source;
  std::string target;
  double epsilon = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;
};

struct TransferReport {
  std::vector<TransferRow> rows;

  /// "source,target,epsilon,accuracy,n"
  std::string to_csv() const;
  /// Throws std::out_of_range if the row does not exist.
  double accuracy(const std::string& source, const std::string& target, double epsilon) const;
};

/// For every epsilon (sorted ascending) perturbations are crafted against
/// `source` (example i uses seed derived from config.seed and i) and every
/// target, including the source itself, is scored on them. Throws
/// std::invalid_argument when input sizes disagree.
TransferReport transfer_evaluate(const Classifier& source,
                                 const std::vector<const Classifier*>& targets,
                                 const LabeledDataset& data, std::vector<double> epsilons,
                                 const AttackConfig& config);

}  // namespace qprep
