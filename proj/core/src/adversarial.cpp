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

#include "qprep/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qprep/parallel.hpp"
#include "qprep/rng.hpp"

namespace qprep {

void AttackConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("attack: epsilon must be >= 0");
  if (steps < 0) throw std::invalid_argument("attack: steps must be >= 0");
  if (epsilon > 0.0 && !(step_size() > 0.0)) throw std::invalid_argument("attack: alpha must be > 0");
}

Image perturb(const Image& x, std::span<const double> delta) {
  if (delta.size() != x.size()) throw std::invalid_argument("perturb: size mismatch");
  Image out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels[i] += delta[i];
  return out;
}

RVec pgd_attack(const Classifier& model, const Image& x, int label, const AttackConfig& config,
                const PgdObserver& observer) {
  config.validate();
  if (!model.has_input_gradient()) {
    throw std::invalid_argument("pgd_attack: classifier '" + model.name() + "' has no input gradient");
  }
  if (x.size() != model.input_size()) throw std::invalid_argument("pgd_attack: input size mismatch");
  const double eps = config.epsilon;
  RVec delta(x.size(), 0.0);
  if (eps == 0.0) {
    if (observer) {
      for (int it = 0; it <= config.steps; ++it) observer(it, delta);
    }
    return delta;
  }
  Rng rng(config.seed);
  for (double& d : delta) d = rng.uniform(-eps, eps);
  if (observer) observer(0, delta);
  const double alpha = config.step_size();
  for (int it = 1; it <= config.steps; ++it) {
    const RVec g = model.loss_gradient(perturb(x, delta), label);
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const double dir = config.step_rule == PgdStepRule::Sign
                             ? static_cast<double>((g[i] > 0.0) - (g[i] < 0.0))
                             : g[i];
      delta[i] = std::clamp(delta[i] + alpha * dir, -eps, eps);
    }
    if (observer) observer(it, delta);
  }
  return delta;
}

std::string TransferReport::to_csv() const {
  std::string out = "source,target,epsilon,accuracy,n\n";
  char buf[64];
  for (const TransferRow& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.6g,%.10f,%zu\n", r.epsilon, r.accuracy, r.n);
    out += r.source + "," + r.target + buf;
  }
  return out;
}

double TransferReport::accuracy(const std::string& source, const std::string& target,
                                double epsilon) const {
  for (const TransferRow& r : rows) {
    if (r.source == source && r.target == target && std::abs(r.epsilon - epsilon) < 1e-12) return r.accuracy;
  }
  throw std::out_of_range("TransferReport: no row for " + source + " -> " + target);
}

TransferReport transfer_evaluate(const Classifier& source,
                                 const std::vector<const Classifier*>& targets,
                                 const LabeledDataset& data, std::vector<double> epsilons,
                                 const AttackConfig& config) {
  std::vector<const Classifier*> scored{&source};
  for (const Classifier* t : targets) {
    if (t->input_size() != source.input_size()) {
      throw std::invalid_argument("transfer_evaluate: '" + t->name() + "' has a different input size");
    }
    if (t != &source) scored.push_back(t);
  }
  std::sort(epsilons.begin(), epsilons.end());
  TransferReport report;
  const std::size_t n = data.size();
  for (double eps : epsilons) {
    AttackConfig cfg = config;
    cfg.epsilon = eps;
    if (eps != config.epsilon) cfg.alpha.reset();
    std::vector<Image> adv(n);
    parallel_for(n, [&](std::size_t i) {
      AttackConfig item = cfg;
      item.seed = derive_seed(config.seed, i);
      adv[i] = perturb(data.images[i], pgd_attack(source, data.images[i], data.labels[i], item));
    });
    for (const Classifier* t : scored) {
      std::vector<char> hit(n);
      parallel_for(n, [&](std::size_t i) { hit[i] = t->predict(adv[i]) == data.labels[i]; });
      const double acc = n ? static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / n : 0.0;
      report.rows.push_back({source.name(), t->name(), eps, acc, n});
    }
  }
  return report;
}

}  // namespace qprep
