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
#include <optional>
#include <vector>

#include "qprep/prep_report.hpp"
#include "qprep/rng.hpp"

namespace qprep {

/// Individual of the genetic search: a gate sequence over
/// {X, SX, RX, RY, RZ, CNOT} with CNOTs on nearest neighbours (i, i+1).
struct Genome {
  std::vector<Gate> genes;
  std::optional<double> fitness;

  std::size_t size() const { return genes.size(); }
  Circuit to_circuit(int n_qubits) const;
};

struct GaspConfig {
  int population_size = 50;
  double mutation_prob = 0.05;
  /// Generations per gene-count probe without reaching the target.
  int max_stale_generations = 200;
  int initial_genes = 64;
  double fidelity_target = 0.6;
  /// L-BFGS iterations per individual per generation.
  int local_opt_steps = 20;
  /// Upper bound of the gene-count search is max_gene_factor * initial_genes.
  int max_gene_factor = 4;
  /// Cap on gene-count probes; 0 means run the bisection to completion.
  int max_probes = 0;

  void validate() const;
};

/// Uniformly random gene: kind uniform over the gate set (CNOT excluded on a
/// single qubit), angle uniform in [0, 2pi), CNOT on a uniform adjacent pair
/// with uniform orientation.
Gate random_gene(int n_qubits, Rng& rng);

Genome random_genome(int n_qubits, int n_genes, Rng& rng);

/// First ceil(L/2) genes of a followed by the remaining genes of b.
/// Throws std::invalid_argument for unequal lengths.
Genome crossover(const Genome& a, const Genome& b);

/// Resamples each gene independently with probability p.
/// Throws std::invalid_argument unless 0 <= p <= 1.
Genome mutate(const Genome& g, double p, int n_qubits, Rng& rng);

/// `count` draws with replacement, probability proportional to fitness.
/// Falls back to uniform draws when every fitness is zero. Throws
/// std::invalid_argument for an empty population or unevaluated members.
std::vector<Genome> roulette_select(const std::vector<Genome>& population, std::size_t count,
                                    Rng& rng);

/// Evaluates |<target|genome|0>|^2.
double genome_fitness(const Genome& g, const Statevector& target);

/// Adjusts the continuous angles with L-BFGS (structure fixed). The returned
/// genome carries its fitness, which is never below the input's.
Genome optimize_parameters(const Genome& g, const Statevector& target, int steps);

struct GaspTraceRow {
  int generation = 0;
  int n_genes = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
};

struct GaspResult {
  PrepResult prep;
  std::vector<GaspTraceRow> trace;
};

/// Full genetic search with bisection over the gene count in
/// [1, max_gene_factor * initial_genes], starting at initial_genes. A probe
/// succeeds when the best fitness reaches the target before
/// max_stale_generations generations elapse; success moves the search to
/// shorter genomes, failure to longer ones. The shortest successful circuit
/// is returned, else the fittest circuit seen, flagged below target.
GaspResult gasp_prepare(const Statevector& target, const GaspConfig& config, uint64_t seed);

std::string gasp_trace_csv(const std::vector<GaspTraceRow>& trace);

}  // namespace qprep
