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

#include "qprep/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <stdexcept>

namespace qprep {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      bad("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string_view layout_name(MpsLayout l) {
  return l == MpsLayout::Sequential ? "sequential" : "parallel_pairs";
}

MpsLayout layout_from_name(const std::string& s) {
  if (s == "sequential") return MpsLayout::Sequential;
  if (s == "parallel_pairs") return MpsLayout::ParallelPairs;
  bad("unknown MPS layout '" + s + "'");
}

std::string_view step_rule_name(PgdStepRule r) { return r == PgdStepRule::Sign ? "sign" : "gradient"; }

PgdStepRule step_rule_from_name(const std::string& s) {
  if (s == "sign") return PgdStepRule::Sign;
  if (s == "gradient") return PgdStepRule::Gradient;
  bad("unknown PGD step rule '" + s + "'");
}

void read_train(const json& j, const std::string& where, TrainConfig& t) {
  check_keys(j, where, {"learning_rate", "epochs", "batch_size", "eval_every"});
  read(j, "learning_rate", t.learning_rate);
  read(j, "epochs", t.epochs);
  read(j, "batch_size", t.batch_size);
  read(j, "eval_every", t.eval_every);
}

json train_json(const TrainConfig& t) {
  return {{"learning_rate", t.learning_rate},
          {"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"eval_every", t.eval_every}};
}

void check_train(const TrainConfig& t, const std::string& where) {
  if (!(t.learning_rate > 0.0)) bad(where + ".learning_rate must be > 0");
  if (t.epochs < 0) bad(where + ".epochs must be >= 0");
  if (t.batch_size < 1) bad(where + ".batch_size must be >= 1");
  if (t.eval_every < 0) bad(where + ".eval_every must be >= 0");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (name.empty()) bad("name must not be empty");
  if (dataset.source != "shapes" && dataset.source != "idx") {
    bad("dataset.source must be 'shapes' or 'idx'");
  }
  if (dataset.source == "idx" && (dataset.images.empty() || dataset.labels.empty())) {
    bad("idx datasets need 'images' and 'labels' paths");
  }
  if (dataset.n_train < 1 || dataset.n_test < 1) bad("dataset needs n_train >= 1 and n_test >= 1");
  if (prep.methods.empty()) bad("prep.methods must not be empty");
  if (std::set<PrepMethod>(prep.methods.begin(), prep.methods.end()).size() != prep.methods.size()) {
    bad("prep.methods contains duplicates");
  }
  if (!(prep.fidelity_target > 0.0 && prep.fidelity_target <= 1.0)) {
    bad("prep.fidelity_target must be in (0, 1]");
  }
  if (prep.mps.max_sweeps < 1) bad("prep.mps.max_sweeps must be >= 1");
  if (prep.mps.layer_bond < 0) bad("prep.mps.layer_bond must be >= 0");
  if (prep.variational.steps_per_round < 1 || prep.variational.max_layers < 1) {
    bad("prep.variational needs steps_per_round >= 1 and max_layers >= 1");
  }
  if (!(prep.variational.learning_rate > 0.0)) bad("prep.variational.learning_rate must be > 0");
  GaspConfig g = prep.gasp;
  g.fidelity_target = prep.fidelity_target;
  g.validate();
  if (model.layers < 1) bad("model.layers must be >= 1");
  if (model.classes < 2) bad("model.classes must be >= 2");
  if (model.restarts < 1) bad("model.restarts must be >= 1");
  check_train(train, "train");
  check_train(surrogate.train, "surrogate.train");
  if (surrogate.hidden < 1) bad("surrogate.hidden must be >= 1");
  if (attack.epsilons.empty()) bad("attack.epsilons must not be empty");
  for (double e : attack.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) bad("attack.epsilons must be finite and >= 0");
  }
  if (attack.steps < 0) bad("attack.steps must be >= 0");
  if (attack.source != "surrogate" && attack.source != "qvc:exact") {
    bad("attack.source must be 'surrogate' or 'qvc:exact' (only exact encodings are differentiable)");
  }
  if (noise.strengths.empty()) bad("noise.strengths must not be empty");
  for (double s : noise.strengths) {
    if (!(s >= 0.0) || !std::isfinite(s)) bad("noise.strengths must be finite and >= 0");
  }
  if (depol.p.empty()) bad("depol.p must not be empty");
  for (double p : depol.p) {
    if (!(p >= 0.0 && p <= 1.0)) bad("depol.p entries must be in [0, 1]");
  }
  if (depol.trajectories < 1) bad("depol.trajectories must be >= 1");
  if (threads < 1) bad("threads must be >= 1");
}

ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "config",
             {"name", "seed", "output_dir", "dataset", "encoding", "prep", "model", "train",
              "surrogate", "attack", "noise", "depol", "depth", "threads"});
  if (!j.contains("seed")) bad("'seed' is required");
  ExperimentConfig c;
  read(j, "name", c.name);
  read(j, "seed", c.seed);
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  read(j, "threads", c.threads);
  if (j.contains("encoding")) {
    try {
      c.encoding = encoding_mode_from_name(j.at("encoding").get<std::string>());
    } catch (const json::exception& e) {
      bad(std::string("bad encoding: ") + e.what());
    }
  }
  if (j.contains("dataset")) {
    const json& d = j.at("dataset");
    check_keys(d, "dataset",
               {"source", "images", "labels", "classes", "n_train", "n_validation", "n_test"});
    read(d, "source", c.dataset.source);
    auto path = [&](const char* key, std::filesystem::path& dst) {
      if (!d.contains(key)) return;
      std::filesystem::path p = d.at(key).get<std::string>();
      dst = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    };
    path("images", c.dataset.images);
    path("labels", c.dataset.labels);
    read(d, "classes", c.dataset.classes);
    read(d, "n_train", c.dataset.n_train);
    read(d, "n_validation", c.dataset.n_validation);
    read(d, "n_test", c.dataset.n_test);
  }
  if (j.contains("prep")) {
    const json& p = j.at("prep");
    check_keys(p, "prep", {"methods", "fidelity_target", "mps", "variational", "gasp"});
    if (p.contains("methods")) {
      c.prep.methods.clear();
      for (const json& m : p.at("methods")) c.prep.methods.push_back(prep_method_from_name(m.get<std::string>()));
    }
    read(p, "fidelity_target", c.prep.fidelity_target);
    if (p.contains("mps")) {
      const json& m = p.at("mps");
      check_keys(m, "prep.mps", {"layout", "max_sweeps", "layer_bond"});
      if (m.contains("layout")) c.prep.mps.layout = layout_from_name(m.at("layout").get<std::string>());
      read(m, "max_sweeps", c.prep.mps.max_sweeps);
      read(m, "layer_bond", c.prep.mps.layer_bond);
    }
    if (p.contains("variational")) {
      const json& v = p.at("variational");
      check_keys(v, "prep.variational", {"steps_per_round", "max_layers", "learning_rate"});
      read(v, "steps_per_round", c.prep.variational.steps_per_round);
      read(v, "max_layers", c.prep.variational.max_layers);
      read(v, "learning_rate", c.prep.variational.learning_rate);
    }
    if (p.contains("gasp")) {
      const json& g = p.at("gasp");
      check_keys(g, "prep.gasp",
                 {"population_size", "mutation_prob", "max_stale_generations", "initial_genes",
                  "local_opt_steps", "max_gene_factor", "max_probes"});
      read(g, "population_size", c.prep.gasp.population_size);
      read(g, "mutation_prob", c.prep.gasp.mutation_prob);
      read(g, "max_stale_generations", c.prep.gasp.max_stale_generations);
      read(g, "initial_genes", c.prep.gasp.initial_genes);
      read(g, "local_opt_steps", c.prep.gasp.local_opt_steps);
      read(g, "max_gene_factor", c.prep.gasp.max_gene_factor);
      read(g, "max_probes", c.prep.gasp.max_probes);
    }
  }
  if (j.contains("model")) {
    check_keys(j.at("model"), "model", {"layers", "classes", "restarts"});
    read(j.at("model"), "layers", c.model.layers);
    read(j.at("model"), "restarts", c.model.restarts);
    read(j.at("model"), "classes", c.model.classes);
  }
  if (j.contains("train")) read_train(j.at("train"), "train", c.train);
  if (j.contains("surrogate")) {
    const json& s = j.at("surrogate");
    check_keys(s, "surrogate", {"hidden", "train"});
    read(s, "hidden", c.surrogate.hidden);
    if (s.contains("train")) read_train(s.at("train"), "surrogate.train", c.surrogate.train);
  }
  if (j.contains("attack")) {
    const json& a = j.at("attack");
    check_keys(a, "attack", {"epsilons", "steps", "source", "step_rule", "n_examples"});
    read(a, "epsilons", c.attack.epsilons);
    read(a, "steps", c.attack.steps);
    read(a, "source", c.attack.source);
    if (a.contains("step_rule")) c.attack.step_rule = step_rule_from_name(a.at("step_rule").get<std::string>());
    read(a, "n_examples", c.attack.n_examples);
  }
  if (j.contains("noise")) {
    check_keys(j.at("noise"), "noise", {"strengths", "n_examples"});
    read(j.at("noise"), "strengths", c.noise.strengths);
    read(j.at("noise"), "n_examples", c.noise.n_examples);
  }
  if (j.contains("depol")) {
    check_keys(j.at("depol"), "depol", {"p", "trajectories", "n_examples"});
    read(j.at("depol"), "p", c.depol.p);
    read(j.at("depol"), "trajectories", c.depol.trajectories);
    read(j.at("depol"), "n_examples", c.depol.n_examples);
  }
  if (j.contains("depth")) {
    check_keys(j.at("depth"), "depth", {"n_examples"});
    read(j.at("depth"), "n_examples", c.depth.n_examples);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

json config_to_json(const ExperimentConfig& c) {
  json methods = json::array();
  for (PrepMethod m : c.prep.methods) methods.push_back(std::string(prep_method_name(m)));
  const GaspConfig& g = c.prep.gasp;
  return {
      {"name", c.name},
      {"seed", c.seed},
      {"output_dir", c.output_dir.generic_string()},
      {"threads", c.threads},
      {"encoding", std::string(encoding_mode_name(c.encoding))},
      {"dataset",
       {{"source", c.dataset.source},
        {"images", c.dataset.images.generic_string()},
        {"labels", c.dataset.labels.generic_string()},
        {"classes", c.dataset.classes},
        {"n_train", c.dataset.n_train},
        {"n_validation", c.dataset.n_validation},
        {"n_test", c.dataset.n_test}}},
      {"prep",
       {{"methods", methods},
        {"fidelity_target", c.prep.fidelity_target},
        {"mps",
         {{"layout", std::string(layout_name(c.prep.mps.layout))},
          {"max_sweeps", c.prep.mps.max_sweeps},
          {"layer_bond", c.prep.mps.layer_bond}}},
        {"variational",
         {{"steps_per_round", c.prep.variational.steps_per_round},
          {"max_layers", c.prep.variational.max_layers},
          {"learning_rate", c.prep.variational.learning_rate}}},
        {"gasp",
         {{"population_size", g.population_size},
          {"mutation_prob", g.mutation_prob},
          {"max_stale_generations", g.max_stale_generations},
          {"initial_genes", g.initial_genes},
          {"local_opt_steps", g.local_opt_steps},
          {"max_gene_factor", g.max_gene_factor},
          {"max_probes", g.max_probes}}}}},
      {"model",
       {{"layers", c.model.layers}, {"classes", c.model.classes}, {"restarts", c.model.restarts}}},
      {"train", train_json(c.train)},
      {"surrogate", {{"hidden", c.surrogate.hidden}, {"train", train_json(c.surrogate.train)}}},
      {"attack",
       {{"epsilons", c.attack.epsilons},
        {"steps", c.attack.steps},
        {"source", c.attack.source},
        {"step_rule", std::string(step_rule_name(c.attack.step_rule))},
        {"n_examples", c.attack.n_examples}}},
      {"noise", {{"strengths", c.noise.strengths}, {"n_examples", c.noise.n_examples}}},
      {"depol",
       {{"p", c.depol.p}, {"trajectories", c.depol.trajectories}, {"n_examples", c.depol.n_examples}}},
      {"depth", {{"n_examples", c.depth.n_examples}}},
  };
}

std::string config_hash(const ExperimentConfig& c) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qprep
