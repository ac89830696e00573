#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "electre/core.hpp"
#include "electre/evolve.hpp"
#include "electre/rng.hpp"

namespace electre::ensemble {

/// One bootstrap sub-model: which rows and criteria it saw, and what the GA
/// elicited for it. Row indices keep draw order and duplicates; criterion
/// indices are distinct and sorted. Parameters are in the restricted shape
/// (one entry per sampled criterion).
struct ModelRecord {
  std::vector<std::size_t> alternative_indices;
  std::vector<std::size_t> criterion_indices;
  TriBParameters params;
  double accuracy = 0.0;
};

struct BuildConfig {
  std::size_t n_models = 1000;
  double sample_fraction = 0.25;
  ga::GaConfig ga;              // per-model seeds are derived, ga.seed is ignored
  std::uint64_t master_seed = 0;
};

struct Ensemble {
  std::vector<ModelRecord> models;
  std::size_t class_count = 0;
  Rule rule = Rule::pessimistic;
  std::uint64_t fingerprint = 0;  // of the training matrix
  BuildConfig config;
};

struct VoteResult {
  std::vector<std::vector<int>> counts;  // per alternative, per class
  std::vector<int> winners;              // argmax, ties toward the lower class
  std::size_t model_count = 0;
};

/// One bootstrap draw: ceil(fraction * rows) row indices with replacement,
/// then criterion indices with replacement until two distinct ones have
/// appeared, deduplicated and sorted.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sample_model(
    const DecisionMatrix& m, double sample_fraction, Rng& rng);

/// Builds the full ensemble. Each model gets its own rng stream derived from
/// the master seed, samples rows and criteria, obtains reference labels, and
/// runs the GA on the sampled sub-matrix. Labels come from `examples` when
/// given (a sample whose rows are all unlabeled is redrawn, up to 100 times),
/// otherwise from k-means over the full alternative set restricted to the
/// model's criteria, ranked by centroid norm. The unqualified version runs
/// models across OpenMP threads; the _serial twin is the reference loop. Both
/// are bit-identical because model i depends only on its derived stream.
Ensemble build_ensemble(const DecisionMatrix& m, const ElicitationSpec& spec,
                        const BuildConfig& config, Rule rule,
                        const ReferenceLabels* examples = nullptr);
Ensemble build_ensemble_serial(const DecisionMatrix& m, const ElicitationSpec& spec,
                               const BuildConfig& config, Rule rule,
                               const ReferenceLabels* examples = nullptr);

/// Every model classifies every row through its own criterion subset; the
/// class with the most votes wins, ties breaking toward the lower class.
VoteResult vote_classify(const Ensemble& ensemble, const DecisionMatrix& m);
VoteResult vote_classify_serial(const Ensemble& ensemble, const DecisionMatrix& m);

/// Single vote for one alternative given as a full-width row.
int vote_one(const Ensemble& ensemble, std::span<const double> row);

/// Averages each parameter over the models covering its criterion (lambda
/// over all models), passes Fixed parameters through, and clips. Throws if
/// some criterion's free parameters are covered by no model.
TriBParameters merge_parameters(const Ensemble& ensemble, const ElicitationSpec& spec);

/// Copy of the ensemble without models below the accuracy floor. Throws if
/// nothing survives.
Ensemble trim_models(const Ensemble& ensemble, double accuracy_floor);

}  // namespace electre::ensemble
