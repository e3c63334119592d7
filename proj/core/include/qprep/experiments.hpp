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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qprep/adversarial.hpp"
#include "qprep/datasets.hpp"
#include "qprep/experiment_config.hpp"
#include "qprep/surrogate.hpp"

namespace qprep {

struct DepthRow {
  std::string item;
  PrepReport report;
};

struct DepthSummaryRow {
  std::string method;
  double median_cnots = 0.0;
  double mean_fidelity = 0.0;
  std::size_t below_target = 0;
  std::size_t n = 0;
};

struct DepthBenchmark {
  std::vector<DepthRow> rows;
  std::vector<DepthSummaryRow> summary;

  std::string rows_csv() const;
  std::string summary_csv() const;
  /// Wall-clock seconds per row; not reproducible, kept out of rows_csv.
  std::string timings_csv() const;
  const DepthSummaryRow& summary_for(PrepMethod m) const;
};

struct NoiseRow {
  double strength = 0.0;
  double mean_fidelity = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;
};
std::string noise_csv(const std::vector<NoiseRow>& rows);

struct DepolRow {
  double p = 0.0;
  std::string method;
  double accuracy = 0.0;
  std::size_t n = 0;
};
std::string depol_csv(const std::vector<DepolRow>& rows);

struct TrainedModel {
  QvcModel model;
  std::vector<TracePoint> trace;
  double test_accuracy = 0.0;
  double mean_train_fidelity = 1.0;
};

/// Lazily builds and caches every artifact an experiment needs: the dataset
/// split, per-method preparers, trained classifiers and the surrogate.
class Workbench {
 public:
  explicit Workbench(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const DatasetSplit& data();
  int n_qubits();

  std::shared_ptr<CachedPreparer> preparer(PrepMethod m);
  /// States fed to a classifier for method m: exact encodings, or the output
  /// of the method's preparation circuit.
  std::vector<LabeledState> states(PrepMethod m, const LabeledDataset& ds);

  const TrainedModel& qvc(PrepMethod m);
  const SurrogateModel& surrogate();
  std::unique_ptr<Classifier> classifier(PrepMethod m);

  DepthBenchmark run_depth_benchmark();
  std::vector<NoiseRow> run_noise_robustness();
  TransferReport run_transfer_attack();
  std::vector<DepolRow> run_depolarizing_sweep();

 private:
  ExperimentConfig config_;
  std::optional<DatasetSplit> data_;
  std::map<PrepMethod, std::shared_ptr<CachedPreparer>> preparers_;
  std::map<PrepMethod, TrainedModel> models_;
  std::optional<SurrogateModel> surrogate_;
};

/// Writes `content` to dir/name, creating dir.
void write_text(const std::filesystem::path& dir, const std::string& name,
                const std::string& content);

/// manifest.json: config hash, seed, library and module versions, the
/// command and the list of output files. Contains no timestamps.
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::string& command, const std::vector<std::string>& outputs);

std::string format_double(double v);

}  // namespace qprep
