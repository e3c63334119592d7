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

#include "qprep/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

#include <Eigen/Core>

#include "qprep/noise.hpp"
#include "qprep/parallel.hpp"
#include "qprep/rng.hpp"
#include "qprep/simulator.hpp"

namespace qprep {

namespace {

// Sub-stream ids for derive_seed(config.seed, ...).
enum Stream : uint64_t {
  kDatasetStream = 1,
  kSplitStream = 2,
  kPrepStream = 3,
  kSurrogateStream = 4,
  kAttackStream = 5,
  kNoiseStream = 6,
  kDepolStream = 7,
  kQvcInitStream = 16,   // + method index
  kQvcTrainStream = 32,  // + method index
};

uint64_t method_index(PrepMethod m) { return static_cast<uint64_t>(m); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

LabeledDataset head(const LabeledDataset& ds, std::size_t n) {
  std::vector<std::size_t> idx(std::min(n, ds.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return ds.subset(idx);
}

std::string qvc_name(PrepMethod m) { return "qvc:" + std::string(prep_method_name(m)); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string DepthBenchmark::rows_csv() const {
  std::string out = prep_csv_header() + "\n";
  for (const DepthRow& r : rows) out += prep_csv_row(r.item, r.report) + "\n";
  return out;
}

std::string DepthBenchmark::summary_csv() const {
  std::string out = "method,median_cnots,mean_fidelity,below_target,n\n";
  for (const DepthSummaryRow& s : summary) {
    out += s.method + "," + format_double(s.median_cnots) + "," + format_double(s.mean_fidelity) +
           "," + std::to_string(s.below_target) + "," + std::to_string(s.n) + "\n";
  }
  return out;
}

std::string DepthBenchmark::timings_csv() const {
  std::string out = "item,method,wall_time_s\n";
  for (const DepthRow& r : rows) {
    out += r.item + "," + r.report.method + "," + format_double(r.report.wall_time_s) + "\n";
  }
  return out;
}

const DepthSummaryRow& DepthBenchmark::summary_for(PrepMethod m) const {
  for (const DepthSummaryRow& s : summary) {
    if (s.method == prep_method_name(m)) return s;
  }
  throw std::out_of_range("DepthBenchmark: no summary for " + std::string(prep_method_name(m)));
}

std::string noise_csv(const std::vector<NoiseRow>& rows) {
  std::string out = "strength,mean_fidelity,accuracy,n\n";
  for (const NoiseRow& r : rows) {
    out += format_double(r.strength) + "," + format_double(r.mean_fidelity) + "," +
           format_double(r.accuracy) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

std::string depol_csv(const std::vector<DepolRow>& rows) {
  std::string out = "p,method,accuracy,n\n";
  for (const DepolRow& r : rows) {
    out += format_double(r.p) + "," + r.method + "," + format_double(r.accuracy) + "," +
           std::to_string(r.n) + "\n";
  }
  return out;
}

Workbench::Workbench(ExperimentConfig config) : config_(std::move(config)) {
  config_.validate();
  set_default_threads(config_.threads);
}

const DatasetSplit& Workbench::data() {
  if (data_) return *data_;
  const DatasetSpec& d = config_.dataset;
  const std::size_t total = d.n_train + d.n_validation + d.n_test;
  LabeledDataset all;
  if (d.source == "shapes") {
    all = generate_shapes(total, derive_seed(config_.seed, kDatasetStream));
  } else {
    LabeledDataset raw = load_idx(d.images, d.labels);
    std::vector<int> classes = d.classes;
    if (classes.empty()) {
      for (int c = 0; c < raw.n_classes(); ++c) classes.push_back(c);
    }
    all = filter_classes(raw, classes, total);
    if (all.size() < total) {
      throw std::invalid_argument("dataset: requested " + std::to_string(total) + " items but only " +
                                  std::to_string(all.size()) + " are available");
    }
  }
  if (all.n_classes() != config_.model.classes) {
    throw std::invalid_argument("dataset has " + std::to_string(all.n_classes()) +
                                " classes but model.classes is " + std::to_string(config_.model.classes));
  }
  const double n = static_cast<double>(total);
  data_ = split(all, {d.n_train / n, d.n_validation / n, d.n_test / n},
                derive_seed(config_.seed, kSplitStream));
  return *data_;
}

int Workbench::n_qubits() {
  const LabeledDataset& train = data().train;
  const int n = encoded_qubits(train.images.front().size(), config_.encoding);
  if (config_.model.classes > n) throw std::invalid_argument("model.classes exceeds the qubit count");
  return n;
}

std::shared_ptr<CachedPreparer> Workbench::preparer(PrepMethod m) {
  auto it = preparers_.find(m);
  if (it != preparers_.end()) return it->second;
  PrepSettings s;
  s.method = m;
  s.fidelity_target = config_.prep.fidelity_target;
  s.mps = config_.prep.mps;
  s.variational = config_.prep.variational;
  s.gasp = config_.prep.gasp;
  s.seed = derive_seed(config_.seed, kPrepStream);
  auto p = std::make_shared<CachedPreparer>(std::move(s));
  preparers_.emplace(m, p);
  return p;
}

std::vector<LabeledState> Workbench::states(PrepMethod m, const LabeledDataset& ds) {
  std::shared_ptr<CachedPreparer> prep = m == PrepMethod::Exact ? nullptr : preparer(m);
  std::vector<LabeledState> out(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    Statevector s = amplitude_encode(ds.images[i], config_.encoding);
    out[i] = {prep ? prep->get(s).prepared : std::move(s), ds.labels[i]};
  });
  return out;
}

const TrainedModel& Workbench::qvc(PrepMethod m) {
  auto it = models_.find(m);
  if (it != models_.end()) return it->second;
  const DatasetSplit& d = data();
  const std::vector<LabeledState> train_states = states(m, d.train);
  const std::vector<LabeledState> val_states = states(m, d.validation);
  const std::vector<LabeledState> test_states = states(m, d.test);
  const std::vector<LabeledState>& select_on = val_states.empty() ? train_states : val_states;
  TrainedModel tm;
  double best_acc = -1.0, best_loss = 0.0;
  for (int r = 0; r < config_.model.restarts; ++r) {
    const uint64_t init_stream = derive_seed(config_.seed, kQvcInitStream + method_index(m));
    QvcModel candidate = QvcModel::create(n_qubits(), config_.model.layers, config_.model.classes,
                                          r == 0 ? init_stream : derive_seed(init_stream, r));
    TrainConfig tc = config_.train;
    tc.seed = derive_seed(derive_seed(config_.seed, kQvcTrainStream + method_index(m)), r);
    TrainResult res = train(candidate, train_states, tc, val_states);
    candidate.params = std::move(res.params);
    const double acc = accuracy(candidate, select_on);
    const double l = loss(candidate, select_on);
    if (acc > best_acc || (acc == best_acc && l < best_loss)) {
      best_acc = acc;
      best_loss = l;
      tm.model = std::move(candidate);
      tm.trace = std::move(res.trace);
    }
  }
  tm.test_accuracy = accuracy(tm.model, test_states);
  if (m != PrepMethod::Exact) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d.train.size(); ++i) {
      sum += fidelity(amplitude_encode(d.train.images[i], config_.encoding), train_states[i].state);
    }
    tm.mean_train_fidelity = sum / static_cast<double>(d.train.size());
  }
  return models_.emplace(m, std::move(tm)).first->second;
}

const SurrogateModel& Workbench::surrogate() {
  if (surrogate_) return *surrogate_;
  TrainConfig tc = config_.surrogate.train;
  tc.seed = derive_seed(config_.seed, kSurrogateStream);
  surrogate_ = train_surrogate(data().train, config_.surrogate.hidden, tc);
  return *surrogate_;
}

std::unique_ptr<Classifier> Workbench::classifier(PrepMethod m) {
  const Image& probe = data().train.images.front();
  const TrainedModel& tm = qvc(m);
  return std::make_unique<QvcClassifier>(qvc_name(m), tm.model, config_.encoding, probe.width,
                                         probe.height,
                                         m == PrepMethod::Exact ? nullptr : preparer(m));
}

DepthBenchmark Workbench::run_depth_benchmark() {
  const LabeledDataset items = head(data().test, config_.depth.n_examples);
  std::vector<PrepMethod> methods{PrepMethod::Exact};
  for (PrepMethod m : config_.prep.methods) {
    if (m != PrepMethod::Exact) methods.push_back(m);
  }
  DepthBenchmark bench;
  for (PrepMethod m : methods) {
    std::shared_ptr<CachedPreparer> prep = preparer(m);
    std::vector<PrepReport> reports(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
      reports[i] = prep->get(amplitude_encode(items.images[i], config_.encoding)).result.report;
    });
    DepthSummaryRow s;
    s.method = std::string(prep_method_name(m));
    s.n = items.size();
    std::vector<double> cnots;
    double fid = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      bench.rows.push_back({"test/" + std::to_string(i), reports[i]});
      cnots.push_back(static_cast<double>(reports[i].cnot_count));
      fid += reports[i].fidelity;
      s.below_target += reports[i].below_target;
    }
    s.median_cnots = median(std::move(cnots));
    s.mean_fidelity = items.size() ? fid / static_cast<double>(items.size()) : 0.0;
    bench.summary.push_back(std::move(s));
  }
  return bench;
}

std::vector<NoiseRow> Workbench::run_noise_robustness() {
  const LabeledDataset items = head(data().test, config_.noise.n_examples);
  const QvcModel& model = qvc(PrepMethod::Exact).model;
  std::vector<double> strengths = config_.noise.strengths;
  std::sort(strengths.begin(), strengths.end());
  const std::size_t n = items.size();
  std::vector<NoiseRow> rows;
  for (double strength : strengths) {
    std::vector<double> fid(n);
    std::vector<char> hit(n);
    parallel_for(n, [&](std::size_t i) {
      const Statevector clean = amplitude_encode(items.images[i], config_.encoding);
      // The same noise draw is scaled across the grid (common random numbers).
      const Image noisy = add_uniform_noise(items.images[i], strength,
                                            derive_seed(derive_seed(config_.seed, kNoiseStream), i));
      const Statevector state = amplitude_encode(noisy, config_.encoding);
      fid[i] = fidelity(clean, state);
      hit[i] = predict(model, state) == items.labels[i];
    });
    NoiseRow r;
    r.strength = strength;
    r.n = n;
    double f = 0.0;
    for (double x : fid) f += x;
    r.mean_fidelity = n ? f / static_cast<double>(n) : 0.0;
    r.accuracy = n ? static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / n : 0.0;
    rows.push_back(r);
  }
  return rows;
}

TransferReport Workbench::run_transfer_attack() {
  const LabeledDataset items = head(data().test, config_.attack.n_examples);
  const Image& probe = data().train.images.front();
  SurrogateClassifier sur("surrogate", surrogate());
  std::vector<std::unique_ptr<Classifier>> qvcs;
  for (PrepMethod m : config_.prep.methods) qvcs.push_back(classifier(m));
  std::unique_ptr<Classifier> exact_source;
  const Classifier* source = &sur;
  if (config_.attack.source == "qvc:exact") {
    exact_source = std::make_unique<QvcClassifier>(qvc_name(PrepMethod::Exact),
                                                   qvc(PrepMethod::Exact).model, config_.encoding,
                                                   probe.width, probe.height);
    source = exact_source.get();
  }
  std::vector<const Classifier*> targets;
  if (source != &sur) targets.push_back(&sur);
  for (const auto& c : qvcs) {
    if (c->name() != source->name()) targets.push_back(c.get());
  }
  AttackConfig ac;
  ac.steps = config_.attack.steps;
  ac.step_rule = config_.attack.step_rule;
  ac.seed = derive_seed(config_.seed, kAttackStream);
  return transfer_evaluate(*source, targets, items, config_.attack.epsilons, ac);
}

std::vector<DepolRow> Workbench::run_depolarizing_sweep() {
  const LabeledDataset items = head(data().test, config_.depol.n_examples);
  const std::size_t n = items.size();
  const int n_q = n_qubits();
  const int traj = config_.depol.trajectories;
  const uint64_t depol_seed = derive_seed(config_.seed, kDepolStream);
  std::vector<double> ps = config_.depol.p;
  std::sort(ps.begin(), ps.end());
  std::vector<DepolRow> rows;
  for (PrepMethod m : config_.prep.methods) {
    const QvcModel& model = qvc(m).model;
    const Circuit classifier_circuit = model.circuit();
    std::shared_ptr<CachedPreparer> prep = preparer(m);
    std::vector<Circuit> pipelines(n);
    parallel_for(n, [&](std::size_t i) {
      Circuit c = prep->get(amplitude_encode(items.images[i], config_.encoding)).result.circuit;
      c.append(classifier_circuit);
      pipelines[i] = std::move(c);
    });
    for (double p : ps) {
      std::vector<char> hit(n);
      parallel_for(n, [&](std::size_t i) {
        // Trajectory t of item i uses the same stream at every p.
        RVec z(model.n_classes, 0.0);
        const int reps = p == 0.0 ? 1 : traj;
        for (int t = 0; t < reps; ++t) {
          const uint64_t s = derive_seed(derive_seed(depol_seed, i), static_cast<uint64_t>(t));
          const Statevector out = sample_depolarizing(pipelines[i], Statevector(n_q), p, s);
          const RVec e = z_expectations(out, model.n_classes);
          for (int k = 0; k < model.n_classes; ++k) z[k] += e[k];
        }
        hit[i] = argmax(z) == items.labels[i];
      });
      DepolRow r;
      r.p = p;
      r.method = std::string(prep_method_name(m));
      r.n = n;
      r.accuracy = n ? static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / n : 0.0;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void write_text(const std::filesystem::path& dir, const std::string& name,
                const std::string& content) {
  const std::filesystem::path path = dir / name;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << content;
}

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::string& command, const std::vector<std::string>& outputs) {
  std::vector<std::string> files = outputs;
  std::sort(files.begin(), files.end());
  nlohmann::json modules;
  for (const char* m : {"core_sim", "synthesis", "encoding", "mps_prep", "gasp_prep", "var_prep",
                        "qvc", "adversarial", "datasets", "cli"}) {
    modules[m] = QPREP_VERSION;
  }
  const nlohmann::json manifest = {
      {"config_hash", config_hash(config)},
      {"seed", config.seed},
      {"command", command},
      {"qprep_version", QPREP_VERSION},
      {"modules", modules},
      {"libraries",
       {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
      {"outputs", files},
      {"config", config_to_json(config)},
  };
  write_text(dir, "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace qprep
