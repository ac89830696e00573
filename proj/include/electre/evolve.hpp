#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "electre/core.hpp"
#include "electre/rng.hpp"

namespace electre::ga {

/// Flat gene vector in the ElicitationSpec layout
/// (weights | q | p | v | profiles worst->best | lambda).
using Chromosome = std::vector<double>;

struct GaConfig {
  std::size_t population_size = 15;
  std::size_t generations = 30;
  std::size_t elite_count = 1;
  double mutation_rate = 0.05;  // per free gene
  double mu = 2.0;              // SBX distribution index
  double eta = 1.0;             // mutation distribution index
  std::uint64_t seed = 0;
};

/// Share of labeled alternatives whose assigned class matches the reference.
/// Throws if no alternative carries a label.
double fitness_accuracy(const TriBParameters& params, const DecisionMatrix& m,
                        const ReferenceLabels& labels, Rule rule);

/// Simulated binary crossover, variable-wise: per free gene draw xi ~ U(0,1),
/// beta = (2 xi)^(1/(mu+1)) below 0.5 and (1/(2-2 xi))^(1/(mu+1)) above, then
///   child1 = ((1-beta) p1 + (1+beta) p2) / 2
///   child2 = ((1+beta) p1 + (1-beta) p2) / 2.
/// Fixed genes pass through untouched. Children are returned raw; the caller
/// clips them (per-gene child1 + child2 = p1 + p2 up to rounding).
std::pair<Chromosome, Chromosome> sbx_crossover(const Chromosome& p1, const Chromosome& p2,
                                                double mu, const ElicitationSpec& spec,
                                                Rng& rng);

/// Per free gene, with probability `rate`: draw xi ~ U(0,1),
/// rho = (2 xi)^(1/(eta+1)) - 1 below 0.5 and 1 - (2-2 xi)^(1/(eta+1)) above
/// (so rho is in (-1, 1)), and shift the gene by rho times its effective bound
/// width. Returned raw; the caller clips.
Chromosome rjgga_mutate(Chromosome genes, double rate, double eta,
                        const ElicitationSpec& spec, Rng& rng);

struct GaResult {
  TriBParameters params;              // best individual ever seen, decoded
  double accuracy = 0.0;              // its fitness
  std::vector<double> best_history;   // population best per generation, initial first
};

/// Full GA run: uniform initialization within bounds, fitness-proportional
/// (roulette) parent selection with a 1e-6 weight floor, SBX, mutation,
/// clipping after every operator, and elitism keeping the `elite_count`
/// fittest (ties keep the earlier individual). Deterministic for a fixed
/// config seed; fitness evaluation is the only parallel-friendly part and
/// draws no random numbers.
GaResult ga_optimize(const DecisionMatrix& m, const ReferenceLabels& labels,
                     const ElicitationSpec& spec, const GaConfig& config, Rule rule);

}  // namespace electre::ga
