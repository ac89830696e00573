#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace electre {

/// Thrown for bad inputs (malformed data, infeasible specs, broken invariants).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Rule { pessimistic, optimistic };
enum class LabelSource { clusters, assignment_examples };

const char* rule_name(Rule r);
Rule rule_from_name(const std::string& name);

/// Alternatives x criteria performance table, row-major.
/// All criteria are maximization-oriented; ingestion transforms happen upstream.
class DecisionMatrix {
 public:
  DecisionMatrix(std::vector<std::string> alternatives,
                 std::vector<std::string> criteria,
                 std::vector<double> values);

  std::size_t rows() const { return alternatives_.size(); }
  std::size_t cols() const { return criteria_.size(); }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  const std::vector<std::string>& alternatives() const { return alternatives_; }
  const std::vector<std::string>& criteria() const { return criteria_; }
  const std::vector<double>& values() const { return values_; }

  /// New matrix keeping only the given criterion columns (sorted, distinct).
  DecisionMatrix select_criteria(const std::vector<std::size_t>& cols) const;
  /// New matrix with the given rows, in order; duplicates allowed.
  DecisionMatrix select_rows(const std::vector<std::size_t>& rows) const;

  double column_min(std::size_t j) const;
  double column_max(std::size_t j) const;

 private:
  std::vector<std::string> alternatives_;
  std::vector<std::string> criteria_;
  std::vector<double> values_;
};

/// Order-sensitive hash of shape and cell bits; identifies the ingested dataset.
std::uint64_t matrix_fingerprint(const DecisionMatrix& m);

/// Full parameter set of one ELECTRE Tri-B model.
/// `profiles` holds the k-1 interior boundaries, worst class first; the
/// conceptual -inf / +inf sentinels are never stored. A veto of +inf means
/// "no veto on this criterion".
struct TriBParameters {
  std::vector<double> weights;
  std::vector<double> q;  // indifference
  std::vector<double> p;  // preference
  std::vector<double> v;  // veto
  std::vector<std::vector<double>> profiles;
  double lambda = 0.75;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Report-style check of every TriBParameters invariant against the expected
/// shape. Messages name offenders 1-based (p_1, b2_1, ...).
ValidationReport validate_parameters(const TriBParameters& params,
                                     std::size_t n_criteria,
                                     std::size_t n_classes);

/// Ordered class labels per alternative, 0 = worst. -1 marks an unlabeled
/// alternative (allowed only for assignment examples).
struct ReferenceLabels {
  std::vector<int> labels;
  int class_count = 0;
  LabelSource source = LabelSource::clusters;

  std::size_t labeled_count() const;
};

/// One scalar parameter of the search space: pinned to a value, or free
/// within finite bounds.
struct GeneSpec {
  bool fixed = false;
  double value = 0.0;  // fixed only; may be +inf for a disabled veto
  double lo = 0.0;     // free only
  double hi = 0.0;

  static GeneSpec make_fixed(double v) { return {true, v, v, v}; }
  static GeneSpec make_free(double lo, double hi) { return {false, 0.0, lo, hi}; }
};

/// Per-parameter fixed/free mask over the flat gene layout
///   weights | q | p | v | profiles (worst->best, row-major) | lambda
/// Construction validates that the mask admits at least one valid
/// TriBParameters and precomputes bounds tightened by fixed neighbors, so
/// clipping can never move a fixed gene.
class ElicitationSpec {
 public:
  ElicitationSpec(std::size_t n_criteria, std::size_t n_classes,
                  std::vector<GeneSpec> genes);

  /// Everything free with the SpecBuilder default bounds: weights [0,1],
  /// lambda [0.5,1], thresholds [0, (max-min)/2], profile cells [min, max].
  static ElicitationSpec all_free(const DecisionMatrix& m, std::size_t n_classes);

  std::size_t criteria() const { return n_criteria_; }
  std::size_t classes() const { return n_classes_; }
  std::size_t gene_count() const { return genes_.size(); }

  std::size_t weight_index(std::size_t j) const { return j; }
  std::size_t q_index(std::size_t j) const { return n_criteria_ + j; }
  std::size_t p_index(std::size_t j) const { return 2 * n_criteria_ + j; }
  std::size_t v_index(std::size_t j) const { return 3 * n_criteria_ + j; }
  std::size_t profile_index(std::size_t h, std::size_t j) const {
    return 4 * n_criteria_ + h * n_criteria_ + j;
  }
  std::size_t lambda_index() const { return genes_.size() - 1; }

  const GeneSpec& gene(std::size_t i) const { return genes_[i]; }
  /// Bounds after tightening by fixed anchors; lo == hi for fixed genes.
  double effective_lo(std::size_t i) const { return eff_lo_[i]; }
  double effective_hi(std::size_t i) const { return eff_hi_[i]; }

  /// Projects a gene vector into the feasible set: fixed genes reset, free
  /// genes clamped (an all-zero weight vector restarts at bound midpoints),
  /// then the threshold chain and profile monotonicity are repaired by
  /// raising each violator to its floor. Idempotent; the result always
  /// decodes to parameters passing validate_parameters.
  std::vector<double> clip(std::vector<double> genes) const;

  TriBParameters decode(const std::vector<double>& genes) const;
  std::vector<double> encode(const TriBParameters& params) const;

  /// Sub-spec over a sorted subset of criteria; lambda and class count kept.
  ElicitationSpec restrict(const std::vector<std::size_t>& criterion_subset) const;

 private:
  std::size_t n_criteria_;
  std::size_t n_classes_;
  std::vector<GeneSpec> genes_;
  std::vector<double> eff_lo_;
  std::vector<double> eff_hi_;

  void compute_effective_bounds();
  void check_feasible() const;
};

/// Convenience assembler for ElicitationSpec: start all-free, pin or bound
/// individual parameters, then build (which validates feasibility).
/// Default free bounds per criterion column: weights [0,1], thresholds
/// [0, (max-min)/2], profile cells [min, max], lambda [0.5, 1].
class SpecBuilder {
 public:
  SpecBuilder(const DecisionMatrix& m, std::size_t n_classes);

  SpecBuilder& fix_weight(std::size_t j, double v);
  SpecBuilder& fix_q(std::size_t j, double v);
  SpecBuilder& fix_p(std::size_t j, double v);
  SpecBuilder& fix_v(std::size_t j, double v);
  SpecBuilder& fix_profile(std::size_t h, std::size_t j, double v);
  SpecBuilder& fix_lambda(double v);
  SpecBuilder& no_veto(std::size_t j);  // v_j = +inf, discordance always 0

  SpecBuilder& bound_weight(std::size_t j, double lo, double hi);
  SpecBuilder& bound_q(std::size_t j, double lo, double hi);
  SpecBuilder& bound_p(std::size_t j, double lo, double hi);
  SpecBuilder& bound_v(std::size_t j, double lo, double hi);
  SpecBuilder& bound_profile(std::size_t h, std::size_t j, double lo, double hi);
  SpecBuilder& bound_lambda(double lo, double hi);

  ElicitationSpec build() const;

 private:
  std::size_t n_criteria_;
  std::size_t n_classes_;
  std::vector<GeneSpec> genes_;
  std::size_t idx(std::size_t family, std::size_t j) const;
};

inline constexpr double kNoVeto = std::numeric_limits<double>::infinity();

}  // namespace electre
