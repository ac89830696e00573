#include "electre/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "electre/clustering.hpp"
#include "electre/tri_b.hpp"

namespace electre::ensemble {

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sample_model(
    const DecisionMatrix& m, double sample_fraction, Rng& rng) {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw ValidationError("sample_fraction outside (0, 1]");
  const auto n_rows = static_cast<std::size_t>(
      std::ceil(sample_fraction * static_cast<double>(m.rows())));
  std::vector<std::size_t> rows;
  rows.reserve(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) rows.push_back(rng.index(m.rows()));

  std::set<std::size_t> distinct;
  while (distinct.size() < 2) distinct.insert(rng.index(m.cols()));
  std::vector<std::size_t> criteria(distinct.begin(), distinct.end());
  return {std::move(rows), std::move(criteria)};
}

namespace {

ModelRecord build_one(const DecisionMatrix& m, const ElicitationSpec& spec,
                      const BuildConfig& config, Rule rule,
                      const ReferenceLabels* examples, std::size_t model_index) {
  Rng rng(Rng::derive(config.master_seed, model_index));
  const std::size_t k = spec.classes();

  for (int attempt = 0; attempt < 100; ++attempt) {
    auto [rows, criteria] = sample_model(m, config.sample_fraction, rng);

    ReferenceLabels sample_labels;
    sample_labels.class_count = static_cast<int>(k);
    if (examples != nullptr) {
      sample_labels.source = LabelSource::assignment_examples;
      for (auto r : rows) sample_labels.labels.push_back(examples->labels[r]);
      if (sample_labels.labeled_count() == 0) continue;  // redraw
    } else {
      // Cluster the full alternative set under this model's criteria and let
      // the sampled rows inherit those labels.
      const auto full_view = m.select_criteria(criteria);
      const auto cluster_labels = cluster::cluster_labels(full_view, k, rng);
      sample_labels.source = LabelSource::clusters;
      for (auto r : rows) sample_labels.labels.push_back(cluster_labels.labels[r]);
    }

    const auto train = m.select_rows(rows).select_criteria(criteria);
    const auto sub_spec = spec.restrict(criteria);
    auto ga_config = config.ga;
    ga_config.seed = rng.raw();
    const auto fit = ga::ga_optimize(train, sample_labels, sub_spec, ga_config, rule);

    ModelRecord record;
    record.alternative_indices = std::move(rows);
    record.criterion_indices = std::move(criteria);
    record.params = fit.params;
    record.accuracy = fit.accuracy;
    return record;
  }
  throw ValidationError("model " + std::to_string(model_index) +
                        ": no labeled alternative sampled in 100 attempts");
}

Ensemble build_common(const DecisionMatrix& m, const ElicitationSpec& spec,
                      const BuildConfig& config, Rule rule,
                      const ReferenceLabels* examples, bool parallel) {
  if (config.n_models == 0) throw ValidationError("n_models must be positive");
  if (spec.criteria() != m.cols())
    throw ValidationError("elicitation spec does not match the matrix width");
  if (examples != nullptr) {
    if (examples->labels.size() != m.rows())
      throw ValidationError("assignment examples do not match the matrix rows");
    if (examples->class_count != static_cast<int>(spec.classes()))
      throw ValidationError("assignment examples disagree on the class count");
  }

  Ensemble out;
  out.class_count = spec.classes();
  out.rule = rule;
  out.fingerprint = matrix_fingerprint(m);
  out.config = config;
  out.models.resize(config.n_models);

  const auto n = static_cast<std::ptrdiff_t>(config.n_models);
  if (parallel) {
    // Exceptions cannot leave an OpenMP region; carry the first one out.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out.models[static_cast<std::size_t>(i)] =
            build_one(m, spec, config, rule, examples, static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(electre_build_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      out.models[static_cast<std::size_t>(i)] =
          build_one(m, spec, config, rule, examples, static_cast<std::size_t>(i));
  }
  return out;
}

// Classifies `row` (full criterion width) with one sub-model.
int model_classify_row(const ModelRecord& model, std::span<const double> row,
                       Rule rule, std::vector<double>& scratch) {
  scratch.clear();
  for (auto j : model.criterion_indices) scratch.push_back(row[j]);
  return trib::classify_one(scratch, model.params, rule);
}

void accumulate_votes(const Ensemble& ensemble, const DecisionMatrix& m,
                      VoteResult& out, bool parallel) {
  const std::size_t n = m.rows(), k = ensemble.class_count;
  out.counts.assign(n, std::vector<int>(k, 0));
  out.winners.assign(n, 0);
  out.model_count = ensemble.models.size();

  const auto n_models = static_cast<std::ptrdiff_t>(ensemble.models.size());
  std::vector<std::vector<int>> per_model(ensemble.models.size());
  auto run_model = [&](std::ptrdiff_t mi) {
    const auto& model = ensemble.models[static_cast<std::size_t>(mi)];
    std::vector<double> scratch;
    auto& classes = per_model[static_cast<std::size_t>(mi)];
    classes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      classes.push_back(model_classify_row(model, m.row(i), ensemble.rule, scratch));
  };
  if (parallel) {
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t mi = 0; mi < n_models; ++mi) {
      try {
        run_model(mi);
      } catch (...) {
#pragma omp critical(electre_vote_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (std::ptrdiff_t mi = 0; mi < n_models; ++mi) run_model(mi);
  }

  for (const auto& classes : per_model)
    for (std::size_t i = 0; i < n; ++i)
      ++out.counts[i][static_cast<std::size_t>(classes[i])];
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    for (std::size_t c = 1; c < k; ++c)
      if (out.counts[i][c] > out.counts[i][static_cast<std::size_t>(best)])
        best = static_cast<int>(c);
    out.winners[i] = best;
  }
}

}  // namespace

Ensemble build_ensemble(const DecisionMatrix& m, const ElicitationSpec& spec,
                        const BuildConfig& config, Rule rule,
                        const ReferenceLabels* examples) {
  return build_common(m, spec, config, rule, examples, true);
}

Ensemble build_ensemble_serial(const DecisionMatrix& m, const ElicitationSpec& spec,
                               const BuildConfig& config, Rule rule,
                               const ReferenceLabels* examples) {
  return build_common(m, spec, config, rule, examples, false);
}

VoteResult vote_classify(const Ensemble& ensemble, const DecisionMatrix& m) {
  VoteResult out;
  accumulate_votes(ensemble, m, out, true);
  return out;
}

VoteResult vote_classify_serial(const Ensemble& ensemble, const DecisionMatrix& m) {
  VoteResult out;
  accumulate_votes(ensemble, m, out, false);
  return out;
}

int vote_one(const Ensemble& ensemble, std::span<const double> row) {
  std::vector<int> counts(ensemble.class_count, 0);
  std::vector<double> scratch;
  for (const auto& model : ensemble.models)
    ++counts[static_cast<std::size_t>(
        model_classify_row(model, row, ensemble.rule, scratch))];
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  return best;
}

TriBParameters merge_parameters(const Ensemble& ensemble, const ElicitationSpec& spec) {
  const std::size_t m = spec.criteria(), k = spec.classes();
  std::vector<double> sums(spec.gene_count(), 0.0);
  std::vector<std::size_t> hits(spec.gene_count(), 0);

  for (const auto& model : ensemble.models) {
    for (std::size_t local = 0; local < model.criterion_indices.size(); ++local) {
      const std::size_t j = model.criterion_indices[local];
      auto add = [&](std::size_t gene, double value) {
        sums[gene] += value;
        ++hits[gene];
      };
      add(spec.weight_index(j), model.params.weights[local]);
      add(spec.q_index(j), model.params.q[local]);
      add(spec.p_index(j), model.params.p[local]);
      add(spec.v_index(j), model.params.v[local]);
      for (std::size_t h = 0; h + 1 < k; ++h)
        add(spec.profile_index(h, j), model.params.profiles[h][local]);
    }
    sums[spec.lambda_index()] += model.params.lambda;
    ++hits[spec.lambda_index()];
  }

  std::vector<double> genes(spec.gene_count());
  for (std::size_t g = 0; g < genes.size(); ++g) {
    if (spec.gene(g).fixed) {
      genes[g] = spec.gene(g).value;
    } else {
      if (hits[g] == 0) {
        // Name the criterion, which is what the caller can act on.
        for (std::size_t j = 0; j < m; ++j)
          if (g == spec.weight_index(j) || g == spec.q_index(j) || g == spec.p_index(j) ||
              g == spec.v_index(j))
            throw ValidationError("uncovered criterion " + std::to_string(j + 1));
        throw ValidationError("uncovered criterion (profile column)");
      }
      genes[g] = sums[g] / static_cast<double>(hits[g]);
    }
  }
  return spec.decode(spec.clip(std::move(genes)));
}

Ensemble trim_models(const Ensemble& ensemble, double accuracy_floor) {
  Ensemble out = ensemble;
  out.models.clear();
  for (const auto& model : ensemble.models)
    if (model.accuracy >= accuracy_floor) out.models.push_back(model);
  if (out.models.empty()) throw ValidationError("trim removed every model");
  return out;
}

}  // namespace electre::ensemble
