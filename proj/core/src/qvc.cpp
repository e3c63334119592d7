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

#include "qprep/qvc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "qprep/optim.hpp"
#include "qprep/parallel.hpp"
#include "qprep/rng.hpp"
#include "qprep/simulator.hpp"
#include "qprep/var_prep.hpp"

namespace qprep {

QvcModel QvcModel::create(int n_qubits, int n_layers, int n_classes, uint64_t seed) {
  QvcModel m;
  m.n_qubits = n_qubits;
  m.n_layers = n_layers;
  m.n_classes = n_classes;
  if (n_qubits < 1 || n_layers < 0) throw std::invalid_argument("QvcModel: bad shape");
  Rng rng(seed);
  m.params.resize(ansatz_parameter_count(n_qubits, n_layers));
  for (double& p : m.params) p = rng.uniform(-kPi, kPi);
  m.validate();
  return m;
}

Circuit QvcModel::circuit() const { return layered_ansatz(n_qubits, n_layers, params); }

void QvcModel::validate() const {
  if (n_qubits < 1 || n_layers < 0) throw std::invalid_argument("QvcModel: bad shape");
  if (n_classes < 1 || n_classes > n_qubits) {
    throw std::invalid_argument("QvcModel: n_classes must lie in [1, n_qubits]");
  }
  if (params.size() != ansatz_parameter_count(n_qubits, n_layers)) {
    throw std::invalid_argument("QvcModel: parameter count does not match the shape");
  }
}

nlohmann::json qvc_to_json(const QvcModel& m) {
  return {{"n_qubits", m.n_qubits}, {"n_layers", m.n_layers}, {"n_classes", m.n_classes},
          {"params", m.params}};
}

QvcModel qvc_from_json(const nlohmann::json& j) {
  QvcModel m;
  try {
    m.n_qubits = j.at("n_qubits").get<int>();
    m.n_layers = j.at("n_layers").get<int>();
    m.n_classes = j.at("n_classes").get<int>();
    m.params = j.at("params").get<RVec>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("qvc json: ") + e.what());
  }
  m.validate();
  return m;
}

RVec softmax(std::span<const double> logits) {
  if (logits.empty()) return {};
  const double top = *std::max_element(logits.begin(), logits.end());
  RVec out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) total += out[i] = std::exp(logits[i] - top);
  for (double& v : out) v /= total;
  return out;
}

int argmax(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("argmax: empty vector");
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

namespace {

void check_state(const QvcModel& m, const Statevector& s) {
  if (s.n_qubits() != m.n_qubits) {
    throw std::invalid_argument("qvc: model has " + std::to_string(m.n_qubits) +
                                " qubits, state has " + std::to_string(s.n_qubits()));
  }
}

void check_label(const QvcModel& m, int label) {
  if (label < 0 || label >= m.n_classes) throw std::invalid_argument("qvc: label out of range");
}

// Cross-entropy on softmax(expectations): returns -log p_y, writes p - e_y.
double cross_entropy(std::span<const double> e, int label, std::span<double> grad) {
  const RVec p = softmax(e);
  for (std::size_t j = 0; j < p.size(); ++j) grad[j] = p[j] - (static_cast<int>(j) == label ? 1.0 : 0.0);
  return -std::log(p[label]);
}

}  // namespace

RVec qvc_expectations(const QvcModel& m, const Statevector& state) {
  check_state(m, state);
  return z_expectations(simulate(m.circuit(), state), m.n_classes);
}

RVec class_probabilities(const QvcModel& m, const Statevector& state) {
  return softmax(qvc_expectations(m, state));
}

int predict(const QvcModel& m, const Statevector& state) {
  return argmax(qvc_expectations(m, state));
}

double loss(const QvcModel& m, std::span<const LabeledState> batch) {
  if (batch.empty()) throw std::invalid_argument("qvc loss: empty batch");
  RVec per(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    check_label(m, batch[i].label);
    per[i] = -std::log(class_probabilities(m, batch[i].state)[batch[i].label]);
  });
  return std::accumulate(per.begin(), per.end(), 0.0) / batch.size();
}

GradientResult loss_gradient(const QvcModel& m, std::span<const LabeledState> batch) {
  if (batch.empty()) throw std::invalid_argument("qvc loss_gradient: empty batch");
  const Circuit circuit = m.circuit();
  std::vector<GradientResult> per(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    const int label = batch[i].label;
    check_label(m, label);
    check_state(m, batch[i].state);
    per[i] = circuit_gradient(circuit, m.params, batch[i].state, m.n_classes,
                              [label](std::span<const double> e, std::span<double> g) {
                                return cross_entropy(e, label, g);
                              });
  });
  GradientResult out;
  out.gradient.assign(m.params.size(), 0.0);
  for (const GradientResult& r : per) {
    out.value += r.value;
    for (std::size_t k = 0; k < r.gradient.size(); ++k) out.gradient[k] += r.gradient[k];
  }
  const double inv = 1.0 / batch.size();
  out.value *= inv;
  for (double& g : out.gradient) g *= inv;
  return out;
}

double accuracy(const QvcModel& m, std::span<const LabeledState> data) {
  if (data.empty()) return 0.0;
  std::vector<char> hit(data.size());
  parallel_for(data.size(), [&](std::size_t i) { hit[i] = predict(m, data[i].state) == data[i].label; });
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / data.size();
}

TrainResult train(const QvcModel& m, std::span<const LabeledState> data, const TrainConfig& config,
                  std::span<const LabeledState> validation) {
  if (data.empty()) throw std::invalid_argument("train: empty training set");
  if (config.batch_size < 1 || config.epochs < 0) throw std::invalid_argument("train: bad config");
  m.validate();
  QvcModel work = m;
  Adam adam(work.params.size(), {config.learning_rate, 0.9, 0.999, 1e-8});
  Rng rng(config.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  TrainResult out;
  const std::span<const LabeledState> eval_set = validation.empty() ? data : validation;
  int step = 0;
  std::vector<LabeledState> batch;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t k = start; k < end; ++k) batch.push_back(data[order[k]]);
      const GradientResult g = loss_gradient(work, batch);
      adam.step(work.params, g.gradient);
      ++step;
      if (config.eval_every > 0 && step % config.eval_every == 0) {
        out.trace.push_back({step, accuracy(work, eval_set), loss(work, eval_set)});
      }
    }
  }
  out.params = std::move(work.params);
  return out;
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::string out = "step,accuracy,loss\n";
  char buf[96];
  for (const TracePoint& p : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.10f,%.10f\n", p.step, p.accuracy, p.loss);
    out += buf;
  }
  return out;
}

RVec input_gradient(const QvcModel& m, const Image& image, int label, EncodingMode mode) {
  check_label(m, label);
  const Statevector psi = amplitude_encode(image, mode);
  check_state(m, psi);
  const Circuit circuit = m.circuit();
  const Statevector out = simulate(circuit, psi);
  const RVec e = z_expectations(out, m.n_classes);
  RVec g(e.size());
  cross_entropy(e, label, g);
  const int n = m.n_qubits;
  CVec lambda(out.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) {
    double w = 0.0;
    for (int q = 0; q < m.n_classes; ++q) w += (i >> (n - 1 - q) & 1) ? -g[q] : g[q];
    lambda[i] = w * out[i];
  }
  CVec cot;
  adjoint_backprop(circuit, out, std::move(lambda), &cot);
  return encode_vjp(image, mode, cot);
}

}  // namespace qprep
