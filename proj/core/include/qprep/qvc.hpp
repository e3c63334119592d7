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
#include <vector>

#include <nlohmann/json.hpp>

#include "qprep/circuit.hpp"
#include "qprep/encoding.hpp"
#include "qprep/gradient.hpp"
#include "qprep/statevector.hpp"

namespace qprep {

/// Variational classifier: layered_ansatz(n_qubits, n_layers) followed by
/// Pauli-Z readout on qubits 0 .. n_classes-1.
struct QvcModel {
  int n_qubits = 1;
  int n_layers = 1;
  int n_classes = 2;
  RVec params;

  /// Angles drawn uniformly from [-pi, pi).
  static QvcModel create(int n_qubits, int n_layers, int n_classes, uint64_t seed);

  Circuit circuit() const;
  /// Throws std::invalid_argument when the dimensions are inconsistent.
  void validate() const;
};

nlohmann::json qvc_to_json(const QvcModel& m);
QvcModel qvc_from_json(const nlohmann::json& j);

struct LabeledState {
  Statevector state{0};
  int label = 0;
};

RVec softmax(std::span<const double> logits);

/// Index of the largest entry; ties go to the lowest index.
int argmax(std::span<const double> v);

RVec qvc_expectations(const QvcModel& m, const Statevector& state);
RVec class_probabilities(const QvcModel& m, const Statevector& state);
/// Throws std::invalid_argument on a dimension mismatch.
int predict(const QvcModel& m, const Statevector& state);

/// Mean of -log p(y_i | x_i). Throws std::invalid_argument for labels
/// outside [0, n_classes).
double loss(const QvcModel& m, std::span<const LabeledState> batch);

/// Loss and its gradient with respect to m.params.
GradientResult loss_gradient(const QvcModel& m, std::span<const LabeledState> batch);

double accuracy(const QvcModel& m, std::span<const LabeledState> data);

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 1;
  int batch_size = 32;
  uint64_t seed = 0;
  /// Validation interval in optimizer steps; 0 disables the trace.
  int eval_every = 0;
};

struct TracePoint {
  int step = 0;
  double accuracy = 0.0;
  double loss = 0.0;
};

struct TrainResult {
  RVec params;
  std::vector<TracePoint> trace;
};

/// Adam on the cross-entropy loss over shuffled mini-batches. Throws
/// std::invalid_argument for an empty training set.
TrainResult train(const QvcModel& m, std::span<const LabeledState> data, const TrainConfig& config,
                  std::span<const LabeledState> validation = {});

std::string trace_csv(const std::vector<TracePoint>& trace);

/// d(-log p(label | image)) / d pixels for the exact amplitude encoding.
/// Throws std::invalid_argument for an all-zero image.
RVec input_gradient(const QvcModel& m, const Image& image, int label, EncodingMode mode);

}  // namespace qprep
