// Unit tests for the core module:
//  - DecisionMatrix construction, slicing, column stats, fingerprint
//  - TriBParameters validation messages
//  - ElicitationSpec layout, effective bounds, clip, decode/encode, restrict
//  - SpecBuilder defaults and pinning
//  - Rng reproducibility and stream derivation

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "electre/core.hpp"
#include "electre/rng.hpp"
#include "support.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace electre;

namespace {

DecisionMatrix small_matrix() {
  // 3 alternatives x 2 criteria.
  return {{"a", "b", "c"}, {"g1", "g2"}, {1.0, 10.0, 2.0, 20.0, 3.0, 30.0}};
}

}  // namespace

TEST_CASE("Rule names round-trip", "[core]") {
  CHECK(rule_name(Rule::pessimistic) == std::string("pessimistic"));
  CHECK(rule_name(Rule::optimistic) == std::string("optimistic"));
  CHECK(rule_from_name("pessimistic") == Rule::pessimistic);
  CHECK(rule_from_name("optimistic") == Rule::optimistic);
  CHECK_THROWS_MATCHES(rule_from_name("middling"), ValidationError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("unknown rule")));
}

TEST_CASE("DecisionMatrix basics", "[core]") {
  const auto m = small_matrix();
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.at(1, 1) == 20.0);
  CHECK(m.row(2)[0] == 3.0);
  CHECK(m.column_min(0) == 1.0);
  CHECK(m.column_max(1) == 30.0);

  SECTION("rejects malformed input") {
    CHECK_THROWS_AS(DecisionMatrix({"a", "b"}, {"g1"}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(DecisionMatrix({"a"}, {"g1", "g2"}, {1.0, 2.0}), ValidationError);
    // Not rectangular: 3 values for 2x2.
    CHECK_THROWS_AS(DecisionMatrix({"a", "b"}, {"g1", "g2"}, {1.0, 2.0, 3.0}),
                    ValidationError);
    // Non-finite cell.
    CHECK_THROWS_AS(DecisionMatrix({"a", "b"}, {"g1", "g2"},
                                   {1.0, std::nan(""), 3.0, 4.0}),
                    ValidationError);
  }
}

TEST_CASE("DecisionMatrix slicing", "[core]") {
  const auto m = small_matrix();

  SECTION("select_criteria keeps the named columns") {
    DecisionMatrix wide{{"a", "b"}, {"g1", "g2", "g3"}, {1, 2, 3, 4, 5, 6}};
    const auto s = wide.select_criteria({0, 2});
    REQUIRE(s.cols() == 2);
    CHECK(s.criteria()[0] == "g1");
    CHECK(s.criteria()[1] == "g3");
    CHECK(s.at(0, 1) == 3.0);
    CHECK(s.at(1, 0) == 4.0);
    CHECK_THROWS_AS(wide.select_criteria({0, 3}), ValidationError);
  }

  SECTION("select_rows keeps order and duplicates") {
    const auto s = m.select_rows({2, 0, 2});
    REQUIRE(s.rows() == 3);
    CHECK(s.alternatives()[0] == "c");
    CHECK(s.alternatives()[1] == "a");
    CHECK(s.at(0, 0) == 3.0);
    CHECK(s.at(2, 1) == 30.0);
    CHECK_THROWS_AS(m.select_rows({3}), ValidationError);
  }
}

TEST_CASE("Matrix fingerprint is order-sensitive and stable", "[core]") {
  const auto m = small_matrix();
  CHECK(matrix_fingerprint(m) == matrix_fingerprint(small_matrix()));

  DecisionMatrix swapped{{"a", "b", "c"}, {"g1", "g2"}, {10.0, 1.0, 2.0, 20.0, 3.0, 30.0}};
  CHECK(matrix_fingerprint(m) != matrix_fingerprint(swapped));
}

TEST_CASE("validate_parameters flags each invariant", "[core]") {
  TriBParameters good;
  good.weights = {0.6, 0.4};
  good.q = {0.5, 0.5};
  good.p = {1.0, 1.0};
  good.v = {2.0, kNoVeto};
  good.profiles = {{5.0, 5.0}, {10.0, 10.0}};
  good.lambda = 0.75;
  CHECK(validate_parameters(good, 2, 3).ok());

  SECTION("shape errors short-circuit") {
    auto bad = good;
    bad.weights.push_back(0.1);
    const auto report = validate_parameters(bad, 2, 3);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "weights size != criterion count");
  }

  SECTION("profile count is tied to the class count") {
    const auto report = validate_parameters(good, 2, 4);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0] == "profile count != class count - 1");
  }

  SECTION("element messages name the offender 1-based") {
    auto bad = good;
    bad.p[1] = 0.2;  // below q_2
    auto report = validate_parameters(bad, 2, 3);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "p_2 < q_2");

    bad = good;
    bad.v[0] = 0.5;
    report = validate_parameters(bad, 2, 3);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "v_1 < p_1");

    bad = good;
    bad.profiles[1][0] = 4.0;  // below profile 1
    report = validate_parameters(bad, 2, 3);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "b2_1 < b1_1");
  }

  SECTION("weights must be in [0,1] and sum positive") {
    auto bad = good;
    bad.weights = {1.5, 0.4};
    CHECK(validate_parameters(bad, 2, 3).violations[0] == "w_1 outside [0,1]");

    bad = good;
    bad.weights = {0.0, 0.0};
    const auto report = validate_parameters(bad, 2, 3);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == "total weight is zero");
  }

  SECTION("lambda range") {
    auto bad = good;
    bad.lambda = 0.4;
    CHECK(validate_parameters(bad, 2, 3).violations[0] == "lambda below 0.5");
    bad.lambda = 1.1;
    CHECK(validate_parameters(bad, 2, 3).violations[0] == "lambda above 1");
  }

  SECTION("a disabled veto is legal, NaN is not") {
    auto ok = good;
    ok.v = {kNoVeto, kNoVeto};
    CHECK(validate_parameters(ok, 2, 3).ok());

    auto bad = good;
    bad.v[0] = std::nan("");
    CHECK_FALSE(validate_parameters(bad, 2, 3).ok());
  }
}

TEST_CASE("ReferenceLabels counts only labeled rows", "[core]") {
  ReferenceLabels labels;
  labels.labels = {0, -1, 2, 1, -1};
  labels.class_count = 3;
  CHECK(labels.labeled_count() == 3);
}

TEST_CASE("ElicitationSpec layout and defaults", "[core]") {
  const auto m = small_matrix();
  const auto spec = ElicitationSpec::all_free(m, 3);

  CHECK(spec.criteria() == 2);
  CHECK(spec.classes() == 3);
  // weights | q | p | v | 2 profiles x 2 | lambda
  CHECK(spec.gene_count() == 4 * 2 + 2 * 2 + 1);
  CHECK(spec.weight_index(1) == 1);
  CHECK(spec.q_index(0) == 2);
  CHECK(spec.p_index(1) == 5);
  CHECK(spec.v_index(0) == 6);
  CHECK(spec.profile_index(1, 1) == 11);
  CHECK(spec.lambda_index() == 12);

  // Default boxes: weights [0,1], thresholds [0, half spread], profiles
  // [min, max], lambda [0.5, 1].
  CHECK(spec.effective_lo(spec.weight_index(0)) == 0.0);
  CHECK(spec.effective_hi(spec.weight_index(0)) == 1.0);
  CHECK(spec.effective_hi(spec.q_index(0)) == Approx(1.0));    // (3-1)/2
  CHECK(spec.effective_hi(spec.v_index(1)) == Approx(10.0));   // (30-10)/2
  CHECK(spec.effective_lo(spec.profile_index(0, 1)) == 10.0);
  CHECK(spec.effective_hi(spec.profile_index(1, 1)) == 30.0);
  CHECK(spec.effective_lo(spec.lambda_index()) == 0.5);
  CHECK(spec.effective_hi(spec.lambda_index()) == 1.0);
}

TEST_CASE("Construction rejects degenerate shapes", "[core]") {
  const auto m = small_matrix();
  CHECK_THROWS_MATCHES(
      ElicitationSpec(2, 3, std::vector<GeneSpec>(5, GeneSpec::make_free(0, 1))),
      ValidationError,
      Catch::Matchers::MessageMatches(ContainsSubstring("gene count")));
  CHECK_THROWS_AS(SpecBuilder(m, 1).build(), ValidationError);
}

TEST_CASE("Fixed genes tighten their neighbors' bounds", "[core]") {
  const auto m = small_matrix();

  SECTION("threshold chain") {
    const auto spec = SpecBuilder(m, 2).fix_p(0, 0.4).build();
    // q_1 may not exceed the fixed p_1; v_1 may not go below it.
    CHECK(spec.effective_hi(spec.q_index(0)) == Approx(0.4));
    CHECK(spec.effective_lo(spec.v_index(0)) == Approx(0.4));
    // The untouched criterion keeps its defaults.
    CHECK(spec.effective_hi(spec.q_index(1)) == Approx(10.0));
  }

  SECTION("profile column") {
    const auto spec = SpecBuilder(m, 4).fix_profile(1, 0, 2.5).build();
    CHECK(spec.effective_hi(spec.profile_index(0, 0)) == Approx(2.5));
    CHECK(spec.effective_lo(spec.profile_index(2, 0)) == Approx(2.5));
  }

  SECTION("contradictory anchors are infeasible") {
    CHECK_THROWS_MATCHES(SpecBuilder(m, 2).fix_q(0, 2.0).fix_p(0, 1.0).build(),
                         ValidationError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("infeasible")));
    CHECK_THROWS_AS(SpecBuilder(m, 3).fix_profile(0, 1, 25.0).fix_profile(1, 1, 15.0).build(),
                    ValidationError);
    // All weights pinned to zero leaves no valid concordance.
    CHECK_THROWS_MATCHES(SpecBuilder(m, 2).fix_weight(0, 0.0).fix_weight(1, 0.0).build(),
                         ValidationError,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("no positive weight is reachable")));
  }

  SECTION("lambda must stay in [0.5, 1]") {
    CHECK_THROWS_AS(SpecBuilder(m, 2).fix_lambda(0.3).build(), ValidationError);
    CHECK_NOTHROW(SpecBuilder(m, 2).fix_lambda(0.5).build());
  }
}

TEST_CASE("clip projects into the feasible set", "[core]") {
  const auto m = small_matrix();

  SECTION("raises the threshold chain") {
    // Wide explicit boxes so clamping is not what repairs the chain.
    const auto spec = SpecBuilder(m, 2)
                          .bound_q(0, 0.0, 10.0)
                          .bound_p(0, 0.0, 10.0)
                          .bound_v(0, 0.0, 10.0)
                          .build();
    auto g = spec.clip(std::vector<double>(spec.gene_count(), 0.5));
    g[spec.q_index(0)] = 5.0;
    g[spec.p_index(0)] = 4.0;
    g[spec.v_index(0)] = 4.5;
    const auto c = spec.clip(g);
    CHECK(c[spec.q_index(0)] == 5.0);
    CHECK(c[spec.p_index(0)] == 5.0);  // raised to q
    CHECK(c[spec.v_index(0)] == 5.0);  // raised to p
  }

  SECTION("raises profile columns") {
    const auto spec = ElicitationSpec::all_free(m, 4);
    auto g = spec.clip(std::vector<double>(spec.gene_count(), 0.5));
    g[spec.profile_index(0, 1)] = 10.0;
    g[spec.profile_index(1, 1)] = 8.0;  // dips below the worst profile
    g[spec.profile_index(2, 1)] = 12.0;
    // 8 < 10 but also below the column minimum; clamp lifts it to 10 either
    // way, and the forward pass keeps the column monotone.
    const auto c = spec.clip(g);
    CHECK(c[spec.profile_index(0, 1)] == 10.0);
    CHECK(c[spec.profile_index(1, 1)] == 10.0);
    CHECK(c[spec.profile_index(2, 1)] == 12.0);
  }

  SECTION("an all-zero weight vector restarts at midpoints") {
    const auto spec = ElicitationSpec::all_free(m, 2);
    auto g = spec.clip(std::vector<double>(spec.gene_count(), 0.7));
    g[spec.weight_index(0)] = 0.0;
    g[spec.weight_index(1)] = -3.0;  // clamps to 0
    const auto c = spec.clip(g);
    CHECK(c[spec.weight_index(0)] == 0.5);
    CHECK(c[spec.weight_index(1)] == 0.5);
  }

  SECTION("never moves fixed genes") {
    const auto spec = SpecBuilder(m, 2).fix_weight(0, 0.7).fix_lambda(0.8).no_veto(1).build();
    auto g = std::vector<double>(spec.gene_count(), 99.0);
    const auto c = spec.clip(g);
    CHECK(c[spec.weight_index(0)] == 0.7);
    CHECK(c[spec.lambda_index()] == 0.8);
    CHECK(std::isinf(c[spec.v_index(1)]));
  }

  SECTION("NaN collapses to the lower bound") {
    const auto spec = ElicitationSpec::all_free(m, 2);
    auto g = spec.clip(std::vector<double>(spec.gene_count(), 0.5));
    g[spec.profile_index(0, 0)] = std::nan("");
    const auto c = spec.clip(g);
    CHECK(c[spec.profile_index(0, 0)] == 1.0);
  }
}

TEST_CASE("decode and encode are inverse on valid parameters", "[core]") {
  const auto m = small_matrix();
  const auto spec = ElicitationSpec::all_free(m, 3);

  Rng rng(7);
  std::vector<double> g(spec.gene_count());
  for (auto& x : g) x = rng.uniform(-5.0, 35.0);
  const auto clipped = spec.clip(g);

  const auto params = spec.decode(clipped);
  CHECK(validate_parameters(params, 2, 3).ok());
  CHECK(spec.encode(params) == clipped);

  auto bad = params;
  bad.lambda = 0.2;
  CHECK_THROWS_MATCHES(spec.encode(bad), ValidationError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("cannot encode")));
}

TEST_CASE("restrict keeps the chosen criteria and the class count", "[core]") {
  DecisionMatrix m{{"a", "b"}, {"g1", "g2", "g3"}, {1, 2, 3, 4, 5, 6}};
  const auto spec = SpecBuilder(m, 3).fix_weight(2, 0.9).fix_q(0, 0.25).build();

  const auto sub = spec.restrict({0, 2});
  CHECK(sub.criteria() == 2);
  CHECK(sub.classes() == 3);
  CHECK(sub.gene_count() == 4 * 2 + 2 * 2 + 1);
  // g3's fixed weight became the second criterion's weight.
  CHECK(sub.gene(sub.weight_index(1)).fixed);
  CHECK(sub.gene(sub.weight_index(1)).value == 0.9);
  CHECK(sub.gene(sub.q_index(0)).fixed);
  CHECK(sub.gene(sub.q_index(0)).value == 0.25);
  // Profile bounds follow the original columns.
  CHECK(sub.effective_lo(sub.profile_index(0, 1)) == 3.0);
  CHECK(sub.effective_hi(sub.profile_index(0, 1)) == 6.0);

  CHECK_THROWS_AS(spec.restrict({1}), ValidationError);
}

TEST_CASE("Rng is reproducible and splits into independent streams", "[core]") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  SECTION("bounded draws respect their interval") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
      const double u = rng.uniform(2.0, 5.0);
      CHECK(u >= 2.0);
      CHECK(u < 5.0);
      const std::size_t k = rng.index(7);
      CHECK(k < 7);
    }
  }

  SECTION("derive is stable and order-free") {
    const auto s3 = Rng::derive(123, 3);
    CHECK(s3 == Rng::derive(123, 3));
    CHECK(s3 != Rng::derive(123, 4));
    CHECK(s3 != Rng::derive(124, 3));
    // Stream seeds feed fresh engines that do not collide over a short run.
    Rng r3(Rng::derive(123, 3)), r4(Rng::derive(123, 4));
    int agree = 0;
    for (int i = 0; i < 100; ++i)
      if (r3.uniform() == r4.uniform()) ++agree;
    CHECK(agree == 0);
  }
}

TEST_CASE("dataset1 fixture matches the expected table shape", "[core]") {
  const auto m = support::dataset1();
  CHECK(m.rows() == 64);
  CHECK(m.cols() == 2);
  CHECK(m.at(0, 0) == 1.0);   // x1 = (1, 1)
  CHECK(m.at(63, 0) == 26.0); // x64 = (26, 18)
  CHECK(m.at(63, 1) == 18.0);
  CHECK(m.column_max(0) == 26.0);
  CHECK(m.column_max(1) == 18.0);
}
