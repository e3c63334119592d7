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

#include "qprep/gasp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qprep/gradient.hpp"
#include "qprep/optim.hpp"
#include "qprep/simulator.hpp"

namespace qprep {

void GaspConfig::validate() const {
  if (population_size < 1) throw std::invalid_argument("gasp: population_size must be >= 1");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw std::invalid_argument("gasp: mutation_prob must lie in [0, 1]");
  }
  if (max_stale_generations < 1) throw std::invalid_argument("gasp: max_stale_generations must be >= 1");
  if (initial_genes < 1) throw std::invalid_argument("gasp: initial_genes must be >= 1");
  if (!(fidelity_target > 0.0 && fidelity_target <= 1.0)) {
    throw std::invalid_argument("gasp: fidelity_target must lie in (0, 1]");
  }
  if (local_opt_steps < 0) throw std::invalid_argument("gasp: local_opt_steps must be >= 0");
  if (max_gene_factor < 1) throw std::invalid_argument("gasp: max_gene_factor must be >= 1");
  if (max_probes < 0) throw std::invalid_argument("gasp: max_probes must be >= 0");
}

Circuit Genome::to_circuit(int n_qubits) const {
  Circuit c(n_qubits);
  for (const Gate& g : genes) c.add(g);
  return c;
}

Gate random_gene(int n_qubits, Rng& rng) {
  static constexpr GateKind kinds[] = {GateKind::X,  GateKind::SX, GateKind::RX,
                                       GateKind::RY, GateKind::RZ, GateKind::CNOT};
  const std::size_t n_kinds = n_qubits > 1 ? 6 : 5;
  const GateKind kind = kinds[rng.index(n_kinds)];
  if (kind == GateKind::CNOT) {
    const int i = static_cast<int>(rng.index(static_cast<std::size_t>(n_qubits - 1)));
    return rng.bernoulli(0.5) ? Gate::cnot(i, i + 1) : Gate::cnot(i + 1, i);
  }
  const int q = static_cast<int>(rng.index(static_cast<std::size_t>(n_qubits)));
  Gate g{kind, {q, -1}, 0.0, nullptr};
  if (g.is_parametric()) g.angle = rng.uniform(0.0, 2 * kPi);
  return g;
}

Genome random_genome(int n_qubits, int n_genes, Rng& rng) {
  if (n_genes < 1) throw std::invalid_argument("random_genome: need at least one gene");
  Genome g;
  g.genes.reserve(n_genes);
  for (int i = 0; i < n_genes; ++i) g.genes.push_back(random_gene(n_qubits, rng));
  return g;
}

Genome crossover(const Genome& a, const Genome& b) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: parents differ in length");
  const std::size_t cut = (a.size() + 1) / 2;
  Genome child;
  child.genes.reserve(a.size());
  child.genes.insert(child.genes.end(), a.genes.begin(), a.genes.begin() + cut);
  child.genes.insert(child.genes.end(), b.genes.begin() + cut, b.genes.end());
  return child;
}

Genome mutate(const Genome& g, double p, int n_qubits, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutate: p must lie in [0, 1]");
  Genome out = g;
  bool changed = false;
  for (Gate& gene : out.genes) {
    if (rng.uniform() < p) {
      gene = random_gene(n_qubits, rng);
      changed = true;
    }
  }
  if (changed) out.fitness.reset();
  return out;
}

std::vector<Genome> roulette_select(const std::vector<Genome>& population, std::size_t count,
                                    Rng& rng) {
  if (population.empty()) throw std::invalid_argument("roulette_select: empty population");
  double total = 0.0;
  for (const Genome& g : population) {
    if (!g.fitness) throw std::invalid_argument("roulette_select: unevaluated individual");
    total += std::max(0.0, *g.fitness);
  }
  std::vector<Genome> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!(total > 0.0)) {
      out.push_back(population[rng.index(population.size())]);
      continue;
    }
    const double u = rng.uniform() * total;
    double cum = 0.0;
    std::size_t pick = population.size() - 1;
    for (std::size_t i = 0; i < population.size(); ++i) {
      cum += std::max(0.0, *population[i].fitness);
      if (u < cum) {
        pick = i;
        break;
      }
    }
    out.push_back(population[pick]);
  }
  return out;
}

double genome_fitness(const Genome& g, const Statevector& target) {
  return fidelity(simulate(g.to_circuit(target.n_qubits())), target);
}

Genome optimize_parameters(const Genome& g, const Statevector& target, int steps) {
  Genome out = g;
  const double start = g.fitness ? *g.fitness : genome_fitness(g, target);
  out.fitness = start;
  const Circuit circuit = g.to_circuit(target.n_qubits());
  if (circuit.parameter_count() == 0 || steps <= 0) return out;
  const Objective obj = [&](std::span<const double> x, std::span<double> grad) {
    const GradientResult r = fidelity_loss_gradient(circuit, x, target);
    std::copy(r.gradient.begin(), r.gradient.end(), grad.begin());
    return r.value;
  };
  const MinimizeResult m = lbfgs_minimize(obj, circuit.parameters(), steps);
  Circuit tuned = circuit;
  tuned.set_parameters(m.x);
  const double fid = fidelity(simulate(tuned), target);
  if (fid > start) {
    out.genes = std::move(tuned.gates);
    out.fitness = fid;
  }
  return out;
}

namespace {

struct ProbeOutcome {
  Genome best;
  bool success = false;
  int generations = 0;
};

ProbeOutcome run_probe(const Statevector& target, const GaspConfig& config, int n_genes,
                       Rng& rng, int& generation_counter, std::vector<GaspTraceRow>& trace) {
  const int n = target.n_qubits();
  std::vector<Genome> pop;
  pop.reserve(config.population_size);
  for (int i = 0; i < config.population_size; ++i) {
    pop.push_back(optimize_parameters(random_genome(n, n_genes, rng), target, config.local_opt_steps));
  }
  auto best_of = [](const std::vector<Genome>& p) {
    return *std::max_element(p.begin(), p.end(), [](const Genome& a, const Genome& b) {
      return *a.fitness < *b.fitness;
    });
  };
  auto log = [&](const std::vector<Genome>& p, const Genome& best) {
    double mean = 0.0;
    for (const Genome& g : p) mean += *g.fitness;
    trace.push_back({generation_counter++, n_genes, *best.fitness, mean / p.size()});
  };
  ProbeOutcome out;
  out.best = best_of(pop);
  log(pop, out.best);
  for (int gen = 0; gen < config.max_stale_generations; ++gen) {
    if (*out.best.fitness >= config.fidelity_target) break;
    const std::size_t n_children = pop.size() - 1;
    const std::vector<Genome> parents = roulette_select(pop, 2 * n_children, rng);
    std::vector<Genome> next;
    next.reserve(pop.size());
    next.push_back(out.best);
    for (std::size_t c = 0; c < n_children; ++c) {
      Genome child = mutate(crossover(parents[2 * c], parents[2 * c + 1]), config.mutation_prob, n, rng);
      child.fitness.reset();
      next.push_back(optimize_parameters(child, target, config.local_opt_steps));
    }
    pop = std::move(next);
    const Genome& gen_best = best_of(pop);
    if (*gen_best.fitness > *out.best.fitness) out.best = gen_best;
    ++out.generations;
    log(pop, out.best);
  }
  out.success = *out.best.fitness >= config.fidelity_target;
  return out;
}

}  // namespace

GaspResult gasp_prepare(const Statevector& target, const GaspConfig& config, uint64_t seed) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = target.n_qubits();
  GaspResult result;
  int lo = 1, hi = config.max_gene_factor * config.initial_genes;
  int genes = std::min(config.initial_genes, hi);
  int generation_counter = 0, total_generations = 0, probes = 0;
  std::optional<Genome> shortest_success, fittest;
  while (lo <= hi && (config.max_probes == 0 || probes < config.max_probes)) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(probes)));
    ProbeOutcome p = run_probe(target, config, genes, rng, generation_counter, result.trace);
    ++probes;
    total_generations += p.generations;
    if (!fittest || *p.best.fitness > *fittest->fitness) fittest = p.best;
    if (p.success) {
      if (!shortest_success || p.best.size() < shortest_success->size()) shortest_success = p.best;
      hi = genes - 1;
    } else {
      lo = genes + 1;
    }
    genes = lo + (hi - lo) / 2;
  }
  const Genome& chosen = shortest_success ? *shortest_success : *fittest;
  result.prep.circuit = chosen.to_circuit(n);
  result.prep.report = measure_preparation("gasp", result.prep.circuit, target,
                                           config.fidelity_target, total_generations);
  result.prep.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string gasp_trace_csv(const std::vector<GaspTraceRow>& trace) {
  std::string out = "generation,n_genes,best_fitness,mean_fitness\n";
  char buf[128];
  for (const GaspTraceRow& r : trace) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.12f,%.12f\n", r.generation, r.n_genes, r.best_fitness,
                  r.mean_fitness);
    out += buf;
  }
  return out;
}

}  // namespace qprep
