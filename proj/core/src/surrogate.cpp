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

#include "qprep/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qprep/optim.hpp"
#include "qprep/parallel.hpp"
#include "qprep/rng.hpp"

namespace qprep {

namespace {

void check_input(const SurrogateModel& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.n_inputs)) {
    throw std::invalid_argument("surrogate: expected " + std::to_string(m.n_inputs) +
                                " inputs, got " + std::to_string(x.size()));
  }
}

RVec hidden(const SurrogateModel& m, std::span<const double> x) {
  RVec h(m.n_hidden);
  for (int j = 0; j < m.n_hidden; ++j) {
    const double* w = &m.w1[static_cast<std::size_t>(j) * m.n_inputs];
    double acc = m.b1[j];
    for (int i = 0; i < m.n_inputs; ++i) acc += w[i] * x[i];
    h[j] = std::tanh(acc);
  }
  return h;
}

RVec output(const SurrogateModel& m, const RVec& h) {
  RVec z(m.n_classes);
  for (int c = 0; c < m.n_classes; ++c) {
    const double* w = &m.w2[static_cast<std::size_t>(c) * m.n_hidden];
    double acc = m.b2[c];
    for (int j = 0; j < m.n_hidden; ++j) acc += w[j] * h[j];
    z[c] = acc;
  }
  return z;
}

// Parameter gradient of -log p(label|x), packed as [w1, b1, w2, b2].
double accumulate_param_gradient(const SurrogateModel& m, std::span<const double> x, int label,
                                 std::span<double> grad) {
  const RVec h = hidden(m, x);
  const RVec p = softmax(output(m, h));
  RVec gz(p);
  gz[label] -= 1.0;
  const std::size_t n_w1 = m.w1.size(), n_b1 = m.b1.size(), n_w2 = m.w2.size();
  double* gw1 = grad.data();
  double* gb1 = gw1 + n_w1;
  double* gw2 = gb1 + n_b1;
  double* gb2 = gw2 + n_w2;
  RVec gh(m.n_hidden, 0.0);
  for (int c = 0; c < m.n_classes; ++c) {
    gb2[c] += gz[c];
    for (int j = 0; j < m.n_hidden; ++j) {
      gw2[static_cast<std::size_t>(c) * m.n_hidden + j] += gz[c] * h[j];
      gh[j] += gz[c] * m.w2[static_cast<std::size_t>(c) * m.n_hidden + j];
    }
  }
  for (int j = 0; j < m.n_hidden; ++j) {
    const double gpre = gh[j] * (1.0 - h[j] * h[j]);
    gb1[j] += gpre;
    double* row = gw1 + static_cast<std::size_t>(j) * m.n_inputs;
    for (int i = 0; i < m.n_inputs; ++i) row[i] += gpre * x[i];
  }
  return -std::log(p[label]);
}

}  // namespace

SurrogateModel SurrogateModel::zeros(int n_inputs, int n_hidden, int n_classes) {
  if (n_inputs < 1 || n_hidden < 1 || n_classes < 1) throw std::invalid_argument("surrogate: bad shape");
  SurrogateModel m;
  m.n_inputs = n_inputs;
  m.n_hidden = n_hidden;
  m.n_classes = n_classes;
  m.w1.assign(static_cast<std::size_t>(n_hidden) * n_inputs, 0.0);
  m.b1.assign(n_hidden, 0.0);
  m.w2.assign(static_cast<std::size_t>(n_classes) * n_hidden, 0.0);
  m.b2.assign(n_classes, 0.0);
  return m;
}

SurrogateModel SurrogateModel::create(int n_inputs, int n_hidden, int n_classes, uint64_t seed) {
  SurrogateModel m = zeros(n_inputs, n_hidden, n_classes);
  Rng rng(seed);
  const double l1 = std::sqrt(6.0 / (n_inputs + n_hidden));
  const double l2 = std::sqrt(6.0 / (n_hidden + n_classes));
  for (double& w : m.w1) w = rng.uniform(-l1, l1);
  for (double& w : m.w2) w = rng.uniform(-l2, l2);
  return m;
}

RVec surrogate_logits(const SurrogateModel& m, std::span<const double> x) {
  check_input(m, x);
  return output(m, hidden(m, x));
}

RVec surrogate_probabilities(const SurrogateModel& m, std::span<const double> x) {
  return softmax(surrogate_logits(m, x));
}

int surrogate_predict(const SurrogateModel& m, std::span<const double> x) {
  return argmax(surrogate_logits(m, x));
}

RVec surrogate_logit_gradient(const SurrogateModel& m, std::span<const double> x, int label) {
  if (label < 0 || label >= m.n_classes) throw std::invalid_argument("surrogate: label out of range");
  RVec g = surrogate_probabilities(m, x);
  g[label] -= 1.0;
  return g;
}

RVec surrogate_gradient(const SurrogateModel& m, std::span<const double> x, int label) {
  if (label < 0 || label >= m.n_classes) throw std::invalid_argument("surrogate: label out of range");
  check_input(m, x);
  const RVec h = hidden(m, x);
  RVec gz = softmax(output(m, h));
  gz[label] -= 1.0;
  RVec gx(m.n_inputs, 0.0);
  for (int j = 0; j < m.n_hidden; ++j) {
    double gh = 0.0;
    for (int c = 0; c < m.n_classes; ++c) gh += gz[c] * m.w2[static_cast<std::size_t>(c) * m.n_hidden + j];
    const double gpre = gh * (1.0 - h[j] * h[j]);
    const double* row = &m.w1[static_cast<std::size_t>(j) * m.n_inputs];
    for (int i = 0; i < m.n_inputs; ++i) gx[i] += gpre * row[i];
  }
  return gx;
}

double surrogate_accuracy(const SurrogateModel& m, const LabeledDataset& ds) {
  if (ds.size() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) hits += surrogate_predict(m, ds.images[i].pixels) == ds.labels[i];
  return static_cast<double>(hits) / ds.size();
}

SurrogateModel train_surrogate(const LabeledDataset& ds, int n_hidden, const TrainConfig& config) {
  ds.validate();
  if (ds.size() == 0) throw std::invalid_argument("train_surrogate: empty dataset");
  const int n_inputs = static_cast<int>(ds.images.front().size());
  SurrogateModel m = SurrogateModel::create(n_inputs, n_hidden, ds.n_classes(), config.seed);
  const std::size_t n_params = m.w1.size() + m.b1.size() + m.w2.size() + m.b2.size();
  Adam adam(n_params, {config.learning_rate, 0.9, 0.999, 1e-8});
  RVec flat(n_params), grad(n_params);
  auto pack = [&] {
    auto it = flat.begin();
    for (const RVec* v : {&m.w1, &m.b1, &m.w2, &m.b2}) it = std::copy(v->begin(), v->end(), it);
  };
  auto unpack = [&] {
    auto it = flat.cbegin();
    for (RVec* v : {&m.w1, &m.b1, &m.w2, &m.b2}) {
      std::copy(it, it + static_cast<std::ptrdiff_t>(v->size()), v->begin());
      it += static_cast<std::ptrdiff_t>(v->size());
    }
  };
  Rng rng(derive_seed(config.seed, 1));
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch = static_cast<std::size_t>(std::max(1, config.batch_size));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t idx = order[k];
        if (ds.images[idx].size() != static_cast<std::size_t>(n_inputs)) {
          throw std::invalid_argument("train_surrogate: inconsistent image sizes");
        }
        accumulate_param_gradient(m, ds.images[idx].pixels, ds.labels[idx], grad);
      }
      for (double& g : grad) g /= static_cast<double>(end - start);
      pack();
      adam.step(flat, grad);
      unpack();
    }
  }
  return m;
}

nlohmann::json surrogate_to_json(const SurrogateModel& m) {
  return {{"n_inputs", m.n_inputs}, {"n_hidden", m.n_hidden}, {"n_classes", m.n_classes},
          {"w1", m.w1},           {"b1", m.b1},             {"w2", m.w2},
          {"b2", m.b2}};
}

SurrogateModel surrogate_from_json(const nlohmann::json& j) {
  try {
    SurrogateModel m = SurrogateModel::zeros(j.at("n_inputs").get<int>(), j.at("n_hidden").get<int>(),
                                             j.at("n_classes").get<int>());
    auto load = [&](const char* key, RVec& dst) {
      RVec v = j.at(key).get<RVec>();
      if (v.size() != dst.size()) throw std::invalid_argument(std::string("surrogate json: bad size for ") + key);
      dst = std::move(v);
    };
    load("w1", m.w1);
    load("b1", m.b1);
    load("w2", m.w2);
    load("b2", m.b2);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("surrogate json: ") + e.what());
  }
}

}  // namespace qprep
