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
#include <span>

#include <nlohmann/json.hpp>

#include "qprep/datasets.hpp"
#include "qprep/qvc.hpp"

namespace qprep {

/// Classical attack source: logits = W2 tanh(W1 x + b1) + b2.
struct SurrogateModel {
  int n_inputs = 0;
  int n_hidden = 0;
  int n_classes = 0;
  RVec w1, b1, w2, b2;  // row-major (hidden x inputs), (classes x hidden)

  /// Glorot-uniform weights, zero biases.
  static SurrogateModel create(int n_inputs, int n_hidden, int n_classes, uint64_t seed);
  static SurrogateModel zeros(int n_inputs, int n_hidden, int n_classes);
};

RVec surrogate_logits(const SurrogateModel& m, std::span<const double> x);
RVec surrogate_probabilities(const SurrogateModel& m, std::span<const double> x);
int surrogate_predict(const SurrogateModel& m, std::span<const double> x);

/// Gradient of -log p(label | x) with respect to x. Throws
/// std::invalid_argument on a dimension mismatch.
RVec surrogate_gradient(const SurrogateModel& m, std::span<const double> x, int label);

/// Gradient of -log p(label | x) with respect to the logits: p - e_label.
RVec surrogate_logit_gradient(const SurrogateModel& m, std::span<const double> x, int label);

double surrogate_accuracy(const SurrogateModel& m, const LabeledDataset& ds);

/// Adam on mean cross-entropy over shuffled mini-batches.
SurrogateModel train_surrogate(const LabeledDataset& ds, int n_hidden, const TrainConfig& config);

nlohmann::json surrogate_to_json(const SurrogateModel& m);
SurrogateModel surrogate_from_json(const nlohmann::json& j);

}  // namespace qprep
