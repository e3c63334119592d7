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

// qprep: runs the experiments of a JSON config and writes CSV reports plus a
// manifest.json into the output directory.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qprep/circuit_io.hpp"
#include "qprep/experiments.hpp"

namespace {

using qprep::PrepMethod;
using qprep::Workbench;

struct Outputs {
  std::filesystem::path dir;
  std::vector<std::string> files;

  void write(const std::string& name, const std::string& content) {
    qprep::write_text(dir, name, content);
    files.push_back(name);
  }
};

void run_prepare(Workbench& wb, Outputs& out) {
  const qprep::DepthBenchmark bench = wb.run_depth_benchmark();
  const qprep::LabeledDataset& test = wb.data().test;
  const std::size_t n = std::min(test.size(), wb.config().depth.n_examples);
  std::vector<PrepMethod> methods{PrepMethod::Exact};
  for (PrepMethod m : wb.config().prep.methods) {
    if (m != PrepMethod::Exact) methods.push_back(m);
  }
  for (PrepMethod m : methods) {
    auto prep = wb.preparer(m);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& entry = prep->get(qprep::amplitude_encode(test.images[i], wb.config().encoding));
      out.write("circuits/" + std::string(qprep::prep_method_name(m)) + "_test" + std::to_string(i) +
                    ".json",
                nlohmann::json{{"n_qubits", entry.result.circuit.n_qubits},
                                {"gates", qprep::circuit_to_json(entry.result.circuit)}}
                        .dump() +
                    "\n");
    }
  }
  out.write("prep_reports.csv", bench.rows_csv());
}

void run_train(Workbench& wb, Outputs& out) {
  std::string summary = "model,test_accuracy,mean_train_fidelity\n";
  for (PrepMethod m : wb.config().prep.methods) {
    const std::string name(qprep::prep_method_name(m));
    const qprep::TrainedModel& tm = wb.qvc(m);
    out.write("models/qvc_" + name + ".json", qprep::qvc_to_json(tm.model).dump(2) + "\n");
    out.write("trace_" + name + ".csv", qprep::trace_csv(tm.trace));
    summary += "qvc:" + name + "," + qprep::format_double(tm.test_accuracy) + "," +
               qprep::format_double(tm.mean_train_fidelity) + "\n";
  }
  const qprep::SurrogateModel& s = wb.surrogate();
  out.write("models/surrogate.json", qprep::surrogate_to_json(s).dump(2) + "\n");
  summary += "surrogate," + qprep::format_double(qprep::surrogate_accuracy(s, wb.data().test)) + ",1\n";
  out.write("train_summary.csv", summary);
}

void run_bench_depth(Workbench& wb, Outputs& out) {
  const qprep::DepthBenchmark bench = wb.run_depth_benchmark();
  out.write("depth_rows.csv", bench.rows_csv());
  out.write("depth_summary.csv", bench.summary_csv());
  // Wall-clock timings are not reproducible and stay out of the manifest.
  qprep::write_text(out.dir, "timings.csv", bench.timings_csv());
}

void run_attack(Workbench& wb, Outputs& out) { out.write("transfer.csv", wb.run_transfer_attack().to_csv()); }

void run_bench_noise(Workbench& wb, Outputs& out) {
  out.write("noise.csv", qprep::noise_csv(wb.run_noise_robustness()));
}

void run_bench_depol(Workbench& wb, Outputs& out) {
  out.write("depol.csv", qprep::depol_csv(wb.run_depolarizing_sweep()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qprep: approximate state preparation and QVC robustness experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::optional<int> threads;

  using Runner = std::function<void(Workbench&, Outputs&)>;
  const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
      {"prepare", "Prepare the depth-benchmark states with every method and save the circuits",
       run_prepare},
      {"train", "Train one QVC per preparation method plus the surrogate", run_train},
      {"attack", "PGD transfer attack over the epsilon grid", run_attack},
      {"bench-depth", "CNOT counts and fidelities per (image, method)", run_bench_depth},
      {"bench-noise", "Uniform pixel-noise robustness sweep", run_bench_noise},
      {"bench-depol", "Two-qubit depolarizing-noise sweep", run_bench_depol},
      {"report", "Run every experiment above", {}},
  };
  std::string chosen;
  for (const auto& [name, help, _] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "Top-level seed (overrides the config)");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->callback([&chosen, n = name] { chosen = n; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    qprep::ExperimentConfig config = qprep::load_config(config_path);
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    if (!out_dir.empty()) config.output_dir = out_dir;
    config.validate();

    Workbench wb(config);
    Outputs out{config.output_dir, {}};
    std::string command = "qprep " + chosen + " --config " + config_path;
    if (seed) command += " --seed " + std::to_string(*seed);

    for (const auto& [name, help, run] : commands) {
      if (chosen == "report") {
        if (run) run(wb, out);
      } else if (name == chosen) {
        run(wb, out);
      }
    }
    qprep::write_manifest(out.dir, config, command, out.files);
    std::cout << "wrote " << out.files.size() << " files to " << out.dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "qprep: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
