// Unit tests for the bagging ensemble:
//  - bootstrap sampling shapes and validation
//  - build determinism, parallel == serial, derived per-model streams
//  - majority voting (counts, tie-break, vote_one) on hand-built models
//  - parameter merging (averages, fixed pass-through, coverage errors)
//  - trimming

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "electre/core.hpp"
#include "electre/ensemble.hpp"
#include "electre/rng.hpp"
#include "electre/tri_b.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace electre;
using namespace electre::ensemble;

namespace {

bool params_equal(const TriBParameters& a, const TriBParameters& b) {
  return a.weights == b.weights && a.q == b.q && a.p == b.p && a.v == b.v &&
         a.profiles == b.profiles && a.lambda == b.lambda;
}

bool ensembles_equal(const Ensemble& a, const Ensemble& b) {
  if (a.models.size() != b.models.size()) return false;
  for (std::size_t i = 0; i < a.models.size(); ++i) {
    const auto& ma = a.models[i];
    const auto& mb = b.models[i];
    if (ma.alternative_indices != mb.alternative_indices) return false;
    if (ma.criterion_indices != mb.criterion_indices) return false;
    if (ma.accuracy != mb.accuracy) return false;
    if (!params_equal(ma.params, mb.params)) return false;
  }
  return a.class_count == b.class_count && a.rule == b.rule &&
         a.fingerprint == b.fingerprint;
}

// A sub-model over both criteria that puts every reasonable row in the same
// class: a profile far below the data concedes to everything (class 1), one
// far above it concedes to nothing (class 0).
ModelRecord constant_model(int target_class) {
  ModelRecord model;
  model.criterion_indices = {0, 1};
  model.params.weights = {0.5, 0.5};
  model.params.q = {0.0, 0.0};
  model.params.p = {1.0, 1.0};
  model.params.v = {2.0, 2.0};
  const double level = target_class == 1 ? -1e6 : 1e6;
  model.params.profiles = {{level, level}};
  model.params.lambda = 0.75;
  model.accuracy = 1.0;
  return model;
}

Ensemble hand_ensemble(const DecisionMatrix& m, std::vector<int> target_classes) {
  Ensemble ens;
  ens.class_count = 2;
  ens.rule = Rule::pessimistic;
  ens.fingerprint = matrix_fingerprint(m);
  for (int c : target_classes) ens.models.push_back(constant_model(c));
  return ens;
}

}  // namespace

TEST_CASE("sample_model draws rows with replacement and two distinct criteria",
          "[ensemble]") {
  const auto m = support::dataset1();
  Rng rng(8);

  for (int trial = 0; trial < 200; ++trial) {
    const auto [rows, criteria] = sample_model(m, 0.25, rng);
    CHECK(rows.size() == 16);  // ceil(0.25 * 64)
    for (auto i : rows) CHECK(i < 64);
    // With only two columns every model sees both, in sorted order.
    CHECK(criteria == std::vector<std::size_t>{0, 1});
  }

  SECTION("the row count rounds up") {
    const auto [rows, criteria] = sample_model(m, 0.1, rng);
    CHECK(rows.size() == 7);  // ceil(6.4)
  }

  SECTION("wider tables still yield exactly two distinct criteria") {
    Rng wide_rng(3);
    const auto wide = support::random_matrix(wide_rng, 10, 5, 0.0, 1.0);
    std::set<std::vector<std::size_t>> seen;
    for (int trial = 0; trial < 300; ++trial) {
      const auto [rows, criteria] = sample_model(wide, 0.5, wide_rng);
      REQUIRE(criteria.size() == 2);
      CHECK(criteria[0] < criteria[1]);
      CHECK(criteria[1] < 5);
      seen.insert(criteria);
    }
    // All 10 pairs appear over 300 draws.
    CHECK(seen.size() == 10);
  }

  SECTION("fraction bounds") {
    CHECK_THROWS_MATCHES(sample_model(m, 0.0, rng), ValidationError,
                         Catch::Matchers::Message("sample_fraction outside (0, 1]"));
    CHECK_THROWS_AS(sample_model(m, 1.5, rng), ValidationError);
    const auto [rows, criteria] = sample_model(m, 1.0, rng);
    CHECK(rows.size() == 64);
  }
}

TEST_CASE("build_ensemble produces well-formed sub-models", "[ensemble]") {
  const auto m = support::dataset1();
  const auto spec = ElicitationSpec::all_free(m, 4);

  BuildConfig config;
  config.n_models = 30;
  config.sample_fraction = 0.25;
  config.master_seed = 3;
  config.ga.population_size = 10;
  config.ga.generations = 8;

  const auto ens = build_ensemble_serial(m, spec, config, Rule::pessimistic);
  CHECK(ens.class_count == 4);
  CHECK(ens.rule == Rule::pessimistic);
  CHECK(ens.fingerprint == matrix_fingerprint(m));
  REQUIRE(ens.models.size() == 30);
  for (const auto& model : ens.models) {
    CHECK(model.alternative_indices.size() == 16);
    CHECK(model.criterion_indices == std::vector<std::size_t>{0, 1});
    CHECK(model.accuracy >= 0.0);
    CHECK(model.accuracy <= 1.0);
    CHECK(validate_parameters(model.params, 2, 4).ok());
  }

  SECTION("parallel build matches the serial reference bit for bit") {
    const auto par = build_ensemble(m, spec, config, Rule::pessimistic);
    CHECK(ensembles_equal(par, ens));
  }

  SECTION("the run is reproducible and keyed by the master seed only") {
    auto again = config;
    again.ga.seed = 999;  // documented as ignored; per-model streams are derived
    CHECK(ensembles_equal(build_ensemble_serial(m, spec, again, Rule::pessimistic), ens));

    auto other = config;
    other.master_seed = 4;
    CHECK_FALSE(
        ensembles_equal(build_ensemble_serial(m, spec, other, Rule::pessimistic), ens));
  }
}

TEST_CASE("build_ensemble validates its inputs", "[ensemble]") {
  const auto m = support::dataset1();
  const auto spec = ElicitationSpec::all_free(m, 4);
  BuildConfig config;
  config.n_models = 2;
  config.ga.population_size = 4;
  config.ga.generations = 1;

  SECTION("model count") {
    auto bad = config;
    bad.n_models = 0;
    CHECK_THROWS_MATCHES(build_ensemble_serial(m, spec, bad, Rule::pessimistic),
                         ValidationError,
                         Catch::Matchers::Message("n_models must be positive"));
  }

  SECTION("spec width") {
    Rng rng(1);
    const auto narrow = support::random_matrix(rng, 5, 3, 0.0, 1.0);
    const auto wrong = ElicitationSpec::all_free(narrow, 4);
    CHECK_THROWS_MATCHES(
        build_ensemble_serial(m, wrong, config, Rule::pessimistic), ValidationError,
        Catch::Matchers::Message("elicitation spec does not match the matrix width"));
  }

  SECTION("examples shape") {
    ReferenceLabels labels = support::dataset1_labels();
    labels.labels.pop_back();
    CHECK_THROWS_MATCHES(
        build_ensemble_serial(m, spec, config, Rule::pessimistic, &labels),
        ValidationError,
        Catch::Matchers::Message("assignment examples do not match the matrix rows"));

    ReferenceLabels wrong_k = support::dataset1_labels();
    wrong_k.class_count = 3;
    CHECK_THROWS_MATCHES(
        build_ensemble_serial(m, spec, config, Rule::pessimistic, &wrong_k),
        ValidationError,
        Catch::Matchers::Message("assignment examples disagree on the class count"));
  }

  SECTION("a sample without labels is redrawn only so many times") {
    ReferenceLabels blank = support::dataset1_labels();
    std::fill(blank.labels.begin(), blank.labels.end(), -1);
    auto one = config;
    one.n_models = 1;
    CHECK_THROWS_MATCHES(
        build_ensemble_serial(m, spec, one, Rule::pessimistic, &blank), ValidationError,
        Catch::Matchers::Message("model 0: no labeled alternative sampled in 100 attempts"));
  }
}

TEST_CASE("Assignment examples drive the sub-model fitness", "[ensemble]") {
  const auto m = support::dataset1();
  const auto spec = ElicitationSpec::all_free(m, 4);
  const auto truth = support::dataset1_labels();

  BuildConfig config;
  config.n_models = 10;
  config.sample_fraction = 0.25;
  config.master_seed = 11;
  config.ga.population_size = 10;
  config.ga.generations = 10;

  const auto ens = build_ensemble_serial(m, spec, config, Rule::pessimistic, &truth);
  REQUIRE(ens.models.size() == 10);
  double mean = 0.0;
  for (const auto& model : ens.models) mean += model.accuracy;
  mean /= 10.0;
  // The blocks are easy to separate; even a short GA gets most samples right.
  CHECK(mean > 0.8);

  SECTION("partially labeled examples are accepted") {
    auto sparse = truth;
    for (std::size_t i = 0; i < sparse.labels.size(); i += 3) sparse.labels[i] = -1;
    CHECK_NOTHROW(build_ensemble_serial(m, spec, config, Rule::pessimistic, &sparse));
  }
}

TEST_CASE("Majority voting counts every model and breaks ties downward",
          "[ensemble]") {
  const auto m = support::dataset1();

  SECTION("unanimous ensembles") {
    const auto ens = hand_ensemble(m, {1, 1, 1});
    const auto votes = vote_classify_serial(ens, m);
    CHECK(votes.model_count == 3);
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(votes.winners[i] == 1);
      CHECK(votes.counts[i] == std::vector<int>{0, 3});
    }
  }

  SECTION("a tie goes to the lower class") {
    const auto ens = hand_ensemble(m, {0, 1});
    const auto votes = vote_classify_serial(ens, m);
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(votes.counts[i] == std::vector<int>{1, 1});
      CHECK(votes.winners[i] == 0);
    }
  }

  SECTION("majorities win and counts always sum to the model count") {
    const auto ens = hand_ensemble(m, {0, 1, 1, 0, 1});
    const auto votes = vote_classify_serial(ens, m);
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(votes.winners[i] == 1);
      CHECK(votes.counts[i][0] + votes.counts[i][1] == 5);
    }
  }

  SECTION("vote_one and the parallel batch agree with the serial batch") {
    const auto ens = hand_ensemble(m, {0, 1, 1});
    const auto serial = vote_classify_serial(ens, m);
    const auto parallel = vote_classify(ens, m);
    CHECK(parallel.counts == serial.counts);
    CHECK(parallel.winners == serial.winners);
    for (std::size_t i = 0; i < 64; ++i)
      CHECK(vote_one(ens, m.row(i)) == serial.winners[i]);
  }
}

TEST_CASE("merge_parameters averages over the covering models", "[ensemble]") {
  DecisionMatrix m{{"lo", "hi"}, {"g1", "g2", "g3"}, {0, 0, 0, 20, 20, 20}};
  const auto spec = ElicitationSpec::all_free(m, 2);

  Ensemble ens;
  ens.class_count = 2;
  ens.rule = Rule::pessimistic;

  // Dyadic values so the expected averages are bit-exact.
  ModelRecord a;
  a.criterion_indices = {0, 1};
  a.params.weights = {0.5, 0.25};
  a.params.q = {1.0, 2.0};
  a.params.p = {2.0, 3.0};
  a.params.v = {4.0, 5.0};
  a.params.profiles = {{5.0, 6.0}};
  a.params.lambda = 0.875;

  ModelRecord b;
  b.criterion_indices = {1, 2};
  b.params.weights = {0.75, 0.5};
  b.params.q = {4.0, 6.0};
  b.params.p = {5.0, 7.0};
  b.params.v = {6.0, 8.0};
  b.params.profiles = {{8.0, 9.0}};
  b.params.lambda = 0.625;

  ens.models = {a, b};
  const auto merged = merge_parameters(ens, spec);

  // g1 comes from model a alone, g3 from model b alone, g2 is their mean;
  // lambda averages over every model.
  CHECK(merged.weights == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(merged.q == std::vector<double>{1.0, 3.0, 6.0});
  CHECK(merged.p == std::vector<double>{2.0, 4.0, 7.0});
  CHECK(merged.v == std::vector<double>{4.0, 5.5, 8.0});
  CHECK(merged.profiles == std::vector<std::vector<double>>{{5.0, 7.0, 9.0}});
  CHECK(merged.lambda == 0.75);
  CHECK(validate_parameters(merged, 3, 2).ok());

  SECTION("an uncovered criterion is an error") {
    Ensemble partial = ens;
    partial.models = {a};  // nobody saw g3
    CHECK_THROWS_MATCHES(merge_parameters(partial, spec), ValidationError,
                         Catch::Matchers::Message("uncovered criterion 3"));
  }

  SECTION("fixed genes pass through instead of averaging") {
    const auto pinned = SpecBuilder(m, 2).fix_q(1, 0.25).no_veto(2).build();
    const auto out = merge_parameters(ens, pinned);
    CHECK(out.q[1] == 0.25);
    CHECK(std::isinf(out.v[2]));
    // Free neighbors keep their averages; the chain holds since 0.25 <= 4.
    CHECK(out.p[1] == 4.0);
  }

  SECTION("the average is clipped back into the feasible set") {
    // Both models put g2's profile above the column maximum of 20.
    Ensemble wild = ens;
    wild.models[0].params.profiles = {{5.0, 30.0}};
    wild.models[1].params.profiles = {{40.0, 9.0}};
    const auto out = merge_parameters(wild, spec);
    CHECK(out.profiles[0][1] == 20.0);  // clamped to the column range
  }
}

TEST_CASE("Merged models from real builds classify sensibly", "[ensemble]") {
  const auto m = support::dataset1();
  const auto spec = ElicitationSpec::all_free(m, 4);
  const auto truth = support::dataset1_labels();

  BuildConfig config;
  config.n_models = 40;
  config.sample_fraction = 0.25;
  config.master_seed = 5;
  config.ga.population_size = 15;
  config.ga.generations = 15;

  const auto ens = build_ensemble(m, spec, config, Rule::pessimistic);
  const auto merged = merge_parameters(ens, spec);
  CHECK(validate_parameters(merged, 2, 4).ok());

  const auto assignment = trib::classify(m, merged, Rule::pessimistic);
  int correct = 0;
  for (std::size_t i = 0; i < 64; ++i)
    if (assignment.classes[i] == truth.labels[i]) ++correct;
  // A short run will not match the full-size experiments, but it has to
  // beat guessing (16/64) by a wide margin.
  CHECK(correct >= 40);
}

TEST_CASE("trim_models drops everything below the floor", "[ensemble]") {
  const auto m = support::dataset1();
  auto ens = hand_ensemble(m, {0, 1, 0, 1});
  ens.models[0].accuracy = 0.2;
  ens.models[1].accuracy = 0.6;
  ens.models[2].accuracy = 0.9;
  ens.models[3].accuracy = 1.0;

  const auto trimmed = trim_models(ens, 0.6);
  REQUIRE(trimmed.models.size() == 3);
  for (const auto& model : trimmed.models) CHECK(model.accuracy >= 0.6);
  CHECK(trimmed.class_count == ens.class_count);
  CHECK(trimmed.fingerprint == ens.fingerprint);

  CHECK_THROWS_MATCHES(trim_models(ens, 1.01), ValidationError,
                       Catch::Matchers::Message("trim removed every model"));
}
