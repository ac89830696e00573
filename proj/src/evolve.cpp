#include "electre/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "electre/tri_b.hpp"

namespace electre::ga {

double fitness_accuracy(const TriBParameters& params, const DecisionMatrix& m,
                        const ReferenceLabels& labels, Rule rule) {
  if (labels.labels.size() != m.rows())
    throw ValidationError("labels size != matrix rows");
  const auto assignment = trib::classify_serial(m, params, rule);
  std::size_t labeled = 0, correct = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (labels.labels[i] < 0) continue;
    ++labeled;
    if (assignment.classes[i] == labels.labels[i]) ++correct;
  }
  if (labeled == 0) throw ValidationError("no labeled alternatives");
  return static_cast<double>(correct) / static_cast<double>(labeled);
}

std::pair<Chromosome, Chromosome> sbx_crossover(const Chromosome& p1, const Chromosome& p2,
                                                double mu, const ElicitationSpec& spec,
                                                Rng& rng) {
  Chromosome c1 = p1, c2 = p2;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (spec.gene(i).fixed) continue;
    const double xi = rng.uniform();
    const double beta = xi < 0.5 ? std::pow(2.0 * xi, 1.0 / (mu + 1.0))
                                 : std::pow(1.0 / (2.0 - 2.0 * xi), 1.0 / (mu + 1.0));
    c1[i] = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    c2[i] = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
  }
  return {std::move(c1), std::move(c2)};
}

Chromosome rjgga_mutate(Chromosome genes, double rate, double eta,
                        const ElicitationSpec& spec, Rng& rng) {
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (spec.gene(i).fixed) continue;
    if (rng.uniform() >= rate) continue;
    const double xi = rng.uniform();
    const double rho = xi < 0.5 ? std::pow(2.0 * xi, 1.0 / (eta + 1.0)) - 1.0
                                : 1.0 - std::pow(2.0 - 2.0 * xi, 1.0 / (eta + 1.0));
    genes[i] += rho * (spec.effective_hi(i) - spec.effective_lo(i));
  }
  return genes;
}

namespace {

void check_config(const GaConfig& config) {
  if (config.population_size < 2)
    throw ValidationError("population_size must be at least 2");
  if (config.elite_count >= config.population_size)
    throw ValidationError("elite_count must be below population_size");
  if (!(config.mutation_rate >= 0.0 && config.mutation_rate <= 1.0))
    throw ValidationError("mutation_rate outside [0,1]");
  if (!(config.mu >= 0.0) || !(config.eta >= 0.0))
    throw ValidationError("distribution indices must be non-negative");
}

std::size_t roulette(const std::vector<double>& fitness, Rng& rng) {
  double total = 0.0;
  for (double f : fitness) total += std::max(f, 1e-6);
  double target = rng.uniform() * total;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    target -= std::max(fitness[i], 1e-6);
    if (target <= 0.0) return i;
  }
  return fitness.size() - 1;
}

// One starting chromosome: per-gene uniforms, except that a criterion whose
// q, p, v are all free within one shared box is drawn straight from the
// feasible region {q <= p <= v} (three draws, sorted). Uniform-then-repair
// would never lower a gene, so it skews initial p and v toward the box top
// and leaves q centred; sorting removes that bias.
Chromosome initial_chromosome(const ElicitationSpec& spec, Rng& rng) {
  Chromosome c(spec.gene_count());
  for (std::size_t g = 0; g < c.size(); ++g)
    c[g] = spec.gene(g).fixed ? spec.gene(g).value
                              : rng.uniform(spec.effective_lo(g), spec.effective_hi(g));
  for (std::size_t j = 0; j < spec.criteria(); ++j) {
    const std::size_t qi = spec.q_index(j), pi = spec.p_index(j), vi = spec.v_index(j);
    if (spec.gene(qi).fixed || spec.gene(pi).fixed || spec.gene(vi).fixed) continue;
    if (spec.effective_lo(qi) != spec.effective_lo(pi) ||
        spec.effective_lo(pi) != spec.effective_lo(vi) ||
        spec.effective_hi(qi) != spec.effective_hi(pi) ||
        spec.effective_hi(pi) != spec.effective_hi(vi))
      continue;
    if (c[qi] > c[pi]) std::swap(c[qi], c[pi]);
    if (c[pi] > c[vi]) std::swap(c[pi], c[vi]);
    if (c[qi] > c[pi]) std::swap(c[qi], c[pi]);
  }
  return c;
}

}  // namespace

GaResult ga_optimize(const DecisionMatrix& m, const ReferenceLabels& labels,
                     const ElicitationSpec& spec, const GaConfig& config, Rule rule) {
  check_config(config);
  Rng rng(config.seed);
  const std::size_t pop_size = config.population_size;

  std::vector<Chromosome> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i)
    pop.push_back(spec.clip(initial_chromosome(spec, rng)));

  std::vector<double> fitness(pop_size);
  auto evaluate = [&] {
    for (std::size_t i = 0; i < pop_size; ++i)
      fitness[i] = fitness_accuracy(spec.decode(pop[i]), m, labels, rule);
  };
  evaluate();

  GaResult result;
  auto track_best = [&] {
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) -
                                 fitness.begin());
    result.best_history.push_back(fitness[best]);
    if (result.best_history.size() == 1 || fitness[best] > result.accuracy) {
      result.accuracy = fitness[best];
      result.params = spec.decode(pop[best]);
    }
  };
  track_best();

  std::vector<std::size_t> rank(pop_size);
  for (std::size_t gen = 0; gen < config.generations; ++gen) {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

    std::vector<Chromosome> next;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < config.elite_count; ++e) next.push_back(pop[rank[e]]);
    while (next.size() < pop_size) {
      const auto& p1 = pop[roulette(fitness, rng)];
      const auto& p2 = pop[roulette(fitness, rng)];
      auto [c1, c2] = sbx_crossover(p1, p2, config.mu, spec, rng);
      c1 = spec.clip(std::move(c1));
      c1 = spec.clip(rjgga_mutate(std::move(c1), config.mutation_rate, config.eta, spec, rng));
      next.push_back(std::move(c1));
      if (next.size() == pop_size) break;
      c2 = spec.clip(std::move(c2));
      c2 = spec.clip(rjgga_mutate(std::move(c2), config.mutation_rate, config.eta, spec, rng));
      next.push_back(std::move(c2));
    }
    pop = std::move(next);
    evaluate();
    track_best();
  }
  return result;
}

}  // namespace electre::ga
