#include "electre/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace electre {

namespace {

// NaN-safe clamp; NaN collapses to lo so downstream stays deterministic.
double clamp(double x, double lo, double hi) {
  if (!(x >= lo)) return lo;
  if (x > hi) return hi;
  return x;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << sep;
    out << parts[i];
  }
  return out.str();
}

}  // namespace

const char* rule_name(Rule r) {
  return r == Rule::pessimistic ? "pessimistic" : "optimistic";
}

Rule rule_from_name(const std::string& name) {
  if (name == "pessimistic") return Rule::pessimistic;
  if (name == "optimistic") return Rule::optimistic;
  throw ValidationError("unknown rule '" + name + "' (expected pessimistic or optimistic)");
}

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives,
                               std::vector<std::string> criteria,
                               std::vector<double> values)
    : alternatives_(std::move(alternatives)),
      criteria_(std::move(criteria)),
      values_(std::move(values)) {
  if (criteria_.size() < 2) throw ValidationError("decision matrix needs at least 2 criteria");
  if (alternatives_.size() < 2) throw ValidationError("decision matrix needs at least 2 alternatives");
  if (values_.size() != alternatives_.size() * criteria_.size())
    throw ValidationError("decision matrix is not rectangular");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw ValidationError("decision matrix cell " + std::to_string(i / criteria_.size()) + "," +
                            std::to_string(i % criteria_.size()) + " is not finite");
}

DecisionMatrix DecisionMatrix::select_criteria(const std::vector<std::size_t>& cols) const {
  std::vector<std::string> names;
  for (auto j : cols) {
    if (j >= this->cols()) throw ValidationError("criterion index out of range");
    names.push_back(criteria_[j]);
  }
  std::vector<double> vals;
  vals.reserve(rows() * cols.size());
  for (std::size_t i = 0; i < rows(); ++i)
    for (auto j : cols) vals.push_back(at(i, j));
  return DecisionMatrix(alternatives_, std::move(names), std::move(vals));
}

DecisionMatrix DecisionMatrix::select_rows(const std::vector<std::size_t>& rows_idx) const {
  std::vector<std::string> names;
  std::vector<double> vals;
  vals.reserve(rows_idx.size() * cols());
  for (auto i : rows_idx) {
    if (i >= rows()) throw ValidationError("alternative index out of range");
    names.push_back(alternatives_[i]);
    auto r = row(i);
    vals.insert(vals.end(), r.begin(), r.end());
  }
  return DecisionMatrix(std::move(names), criteria_, std::move(vals));
}

double DecisionMatrix::column_min(std::size_t j) const {
  double m = at(0, j);
  for (std::size_t i = 1; i < rows(); ++i) m = std::min(m, at(i, j));
  return m;
}

double DecisionMatrix::column_max(std::size_t j) const {
  double m = at(0, j);
  for (std::size_t i = 1; i < rows(); ++i) m = std::max(m, at(i, j));
  return m;
}

std::uint64_t matrix_fingerprint(const DecisionMatrix& m) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(m.rows());
  mix(m.cols());
  for (double v : m.values()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    mix(bits);
  }
  return h;
}

std::size_t ReferenceLabels::labeled_count() const {
  std::size_t n = 0;
  for (int l : labels)
    if (l >= 0) ++n;
  return n;
}

ValidationReport validate_parameters(const TriBParameters& params,
                                     std::size_t n_criteria,
                                     std::size_t n_classes) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t m = n_criteria;

  if (params.weights.size() != m) out.push_back("weights size != criterion count");
  if (params.q.size() != m) out.push_back("q size != criterion count");
  if (params.p.size() != m) out.push_back("p size != criterion count");
  if (params.v.size() != m) out.push_back("v size != criterion count");
  if (params.profiles.size() + 1 != n_classes)
    out.push_back("profile count != class count - 1");
  for (const auto& row : params.profiles)
    if (row.size() != m) {
      out.push_back("profile row size != criterion count");
      break;
    }
  if (!out.empty()) return report;  // shape broken, element checks would be UB

  double total_weight = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::string tag = "_" + std::to_string(j + 1);
    if (!std::isfinite(params.weights[j]) || params.weights[j] < 0.0 || params.weights[j] > 1.0)
      out.push_back("w" + tag + " outside [0,1]");
    else
      total_weight += params.weights[j];
    if (!std::isfinite(params.q[j]) || params.q[j] < 0.0) out.push_back("q" + tag + " negative or not finite");
    if (!std::isfinite(params.p[j])) out.push_back("p" + tag + " not finite");
    if (std::isnan(params.v[j])) out.push_back("v" + tag + " not a number");
    if (params.p[j] < params.q[j]) out.push_back("p" + tag + " < q" + tag);
    if (params.v[j] < params.p[j]) out.push_back("v" + tag + " < p" + tag);
  }
  for (std::size_t h = 0; h < params.profiles.size(); ++h)
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(params.profiles[h][j])) {
        out.push_back("b" + std::to_string(h + 1) + "_" + std::to_string(j + 1) + " not finite");
        continue;
      }
      if (h > 0 && params.profiles[h][j] < params.profiles[h - 1][j])
        out.push_back("b" + std::to_string(h + 1) + "_" + std::to_string(j + 1) + " < b" +
                      std::to_string(h) + "_" + std::to_string(j + 1));
    }
  if (!(params.lambda >= 0.5)) out.push_back("lambda below 0.5");
  if (!(params.lambda <= 1.0)) out.push_back("lambda above 1");
  if (total_weight <= 0.0) out.push_back("total weight is zero");
  return report;
}

ElicitationSpec::ElicitationSpec(std::size_t n_criteria, std::size_t n_classes,
                                 std::vector<GeneSpec> genes)
    : n_criteria_(n_criteria), n_classes_(n_classes), genes_(std::move(genes)) {
  if (n_criteria_ < 2) throw ValidationError("elicitation spec needs at least 2 criteria");
  if (n_classes_ < 2) throw ValidationError("elicitation spec needs at least 2 classes");
  const std::size_t expected = 4 * n_criteria_ + (n_classes_ - 1) * n_criteria_ + 1;
  if (genes_.size() != expected)
    throw ValidationError("elicitation spec gene count " + std::to_string(genes_.size()) +
                          " != expected " + std::to_string(expected));
  compute_effective_bounds();
  check_feasible();
}

ElicitationSpec ElicitationSpec::all_free(const DecisionMatrix& m, std::size_t n_classes) {
  return SpecBuilder(m, n_classes).build();
}

void ElicitationSpec::compute_effective_bounds() {
  const std::size_t n = genes_.size();
  eff_lo_.assign(n, 0.0);
  eff_hi_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (genes_[i].fixed) {
      eff_lo_[i] = eff_hi_[i] = genes_[i].value;
    } else {
      eff_lo_[i] = genes_[i].lo;
      eff_hi_[i] = genes_[i].hi;
    }
  }
  auto tighten_lo = [this](std::size_t i, double floor) {
    if (!genes_[i].fixed) eff_lo_[i] = std::max(eff_lo_[i], floor);
  };
  auto tighten_hi = [this](std::size_t i, double ceil) {
    if (!genes_[i].fixed) eff_hi_[i] = std::min(eff_hi_[i], ceil);
  };

  for (std::size_t j = 0; j < n_criteria_; ++j) {
    tighten_lo(weight_index(j), 0.0);
    tighten_hi(weight_index(j), 1.0);
    tighten_lo(q_index(j), 0.0);
    tighten_lo(p_index(j), 0.0);
    tighten_lo(v_index(j), 0.0);

    // Fixed genes anchor the q <= p <= v chain so clipping never has to move them.
    const std::size_t qi = q_index(j), pi = p_index(j), vi = v_index(j);
    if (genes_[qi].fixed) {
      tighten_lo(pi, genes_[qi].value);
      tighten_lo(vi, genes_[qi].value);
    }
    if (genes_[pi].fixed) {
      tighten_hi(qi, genes_[pi].value);
      tighten_lo(vi, genes_[pi].value);
    }
    if (genes_[vi].fixed) {
      tighten_hi(qi, genes_[vi].value);
      tighten_hi(pi, genes_[vi].value);
    }

    // Same idea down the profile column.
    double below = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h + 1 < n_classes_; ++h) {
      const std::size_t gi = profile_index(h, j);
      if (genes_[gi].fixed)
        below = std::max(below, genes_[gi].value);
      else
        tighten_lo(gi, below);
    }
    double above = std::numeric_limits<double>::infinity();
    for (std::size_t h = n_classes_ - 1; h-- > 0;) {
      const std::size_t gi = profile_index(h, j);
      if (genes_[gi].fixed)
        above = std::min(above, genes_[gi].value);
      else
        tighten_hi(gi, above);
    }
  }
  tighten_lo(lambda_index(), 0.5);
  tighten_hi(lambda_index(), 1.0);
}

void ElicitationSpec::check_feasible() const {
  std::vector<std::string> problems;
  auto gene_name = [this](std::size_t i) -> std::string {
    if (i == lambda_index()) return "lambda";
    if (i < n_criteria_) return "w_" + std::to_string(i + 1);
    if (i < 2 * n_criteria_) return "q_" + std::to_string(i - n_criteria_ + 1);
    if (i < 3 * n_criteria_) return "p_" + std::to_string(i - 2 * n_criteria_ + 1);
    if (i < 4 * n_criteria_) return "v_" + std::to_string(i - 3 * n_criteria_ + 1);
    const std::size_t off = i - 4 * n_criteria_;
    return "b" + std::to_string(off / n_criteria_ + 1) + "_" +
           std::to_string(off % n_criteria_ + 1);
  };

  bool weight_possible = false;
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    const auto& g = genes_[i];
    if (g.fixed) {
      const bool veto_inf = i >= 3 * n_criteria_ && i < 4 * n_criteria_ &&
                            g.value == std::numeric_limits<double>::infinity();
      if (!std::isfinite(g.value) && !veto_inf)
        problems.push_back(gene_name(i) + " fixed to a non-finite value");
    } else {
      if (!std::isfinite(g.lo) || !std::isfinite(g.hi))
        problems.push_back(gene_name(i) + " has non-finite bounds");
      else if (eff_lo_[i] > eff_hi_[i])
        problems.push_back(gene_name(i) + " has empty feasible range");
    }
    if (i < n_criteria_ && (g.fixed ? g.value > 0.0 : eff_hi_[i] > 0.0)) weight_possible = true;
  }
  if (!weight_possible) problems.push_back("no positive weight is reachable");

  // Fixed genes must already satisfy the orderings among themselves.
  for (std::size_t j = 0; j < n_criteria_; ++j) {
    const auto& q = genes_[q_index(j)];
    const auto& p = genes_[p_index(j)];
    const auto& v = genes_[v_index(j)];
    if (q.fixed && q.value < 0.0) problems.push_back("q_" + std::to_string(j + 1) + " fixed negative");
    if (q.fixed && p.fixed && p.value < q.value)
      problems.push_back("fixed p_" + std::to_string(j + 1) + " < fixed q_" + std::to_string(j + 1));
    if (p.fixed && v.fixed && v.value < p.value)
      problems.push_back("fixed v_" + std::to_string(j + 1) + " < fixed p_" + std::to_string(j + 1));
    if (q.fixed && v.fixed && v.value < q.value)
      problems.push_back("fixed v_" + std::to_string(j + 1) + " < fixed q_" + std::to_string(j + 1));
    double prev_fixed = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h + 1 < n_classes_; ++h) {
      const auto& cell = genes_[profile_index(h, j)];
      if (!cell.fixed) continue;
      if (cell.value < prev_fixed)
        problems.push_back("fixed profiles not monotone on criterion " + std::to_string(j + 1));
      prev_fixed = cell.value;
    }
  }
  const auto& lam = genes_[lambda_index()];
  if (lam.fixed && (lam.value < 0.5 || lam.value > 1.0))
    problems.push_back("lambda fixed outside [0.5, 1]");

  if (!problems.empty())
    throw ValidationError("infeasible elicitation spec: " + join(problems, "; "));
}

std::vector<double> ElicitationSpec::clip(std::vector<double> g) const {
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = genes_[i].fixed ? genes_[i].value : clamp(g[i], eff_lo_[i], eff_hi_[i]);
  // Every weight can land on its lower clamp at once, which would make all
  // concordances undefined; restart the free ones at their midpoints
  // (feasibility guarantees at least one can be positive).
  double total_weight = 0.0;
  for (std::size_t j = 0; j < n_criteria_; ++j) total_weight += g[weight_index(j)];
  if (total_weight <= 0.0)
    for (std::size_t j = 0; j < n_criteria_; ++j) {
      const std::size_t i = weight_index(j);
      if (!genes_[i].fixed) g[i] = 0.5 * (eff_lo_[i] + eff_hi_[i]);
    }
  for (std::size_t j = 0; j < n_criteria_; ++j) {
    if (g[p_index(j)] < g[q_index(j)]) g[p_index(j)] = g[q_index(j)];
    if (g[v_index(j)] < g[p_index(j)]) g[v_index(j)] = g[p_index(j)];
    for (std::size_t h = 1; h + 1 < n_classes_; ++h) {
      const std::size_t cur = profile_index(h, j), prev = profile_index(h - 1, j);
      if (g[cur] < g[prev]) g[cur] = g[prev];
    }
  }
  return g;
}

TriBParameters ElicitationSpec::decode(const std::vector<double>& g) const {
  TriBParameters params;
  params.weights.assign(g.begin(), g.begin() + n_criteria_);
  params.q.assign(g.begin() + n_criteria_, g.begin() + 2 * n_criteria_);
  params.p.assign(g.begin() + 2 * n_criteria_, g.begin() + 3 * n_criteria_);
  params.v.assign(g.begin() + 3 * n_criteria_, g.begin() + 4 * n_criteria_);
  for (std::size_t h = 0; h + 1 < n_classes_; ++h) {
    auto first = g.begin() + static_cast<std::ptrdiff_t>(profile_index(h, 0));
    params.profiles.emplace_back(first, first + static_cast<std::ptrdiff_t>(n_criteria_));
  }
  params.lambda = g[lambda_index()];
  return params;
}

std::vector<double> ElicitationSpec::encode(const TriBParameters& params) const {
  auto report = validate_parameters(params, n_criteria_, n_classes_);
  if (!report.ok())
    throw ValidationError("cannot encode invalid parameters: " + join(report.violations, "; "));
  std::vector<double> g;
  g.reserve(gene_count());
  g.insert(g.end(), params.weights.begin(), params.weights.end());
  g.insert(g.end(), params.q.begin(), params.q.end());
  g.insert(g.end(), params.p.begin(), params.p.end());
  g.insert(g.end(), params.v.begin(), params.v.end());
  for (const auto& row : params.profiles) g.insert(g.end(), row.begin(), row.end());
  g.push_back(params.lambda);
  return g;
}

ElicitationSpec ElicitationSpec::restrict(const std::vector<std::size_t>& subset) const {
  if (subset.size() < 2) throw ValidationError("criterion subset needs at least 2 members");
  std::vector<GeneSpec> out;
  out.reserve(4 * subset.size() + (n_classes_ - 1) * subset.size() + 1);
  for (auto j : subset) out.push_back(genes_[weight_index(j)]);
  for (auto j : subset) out.push_back(genes_[q_index(j)]);
  for (auto j : subset) out.push_back(genes_[p_index(j)]);
  for (auto j : subset) out.push_back(genes_[v_index(j)]);
  for (std::size_t h = 0; h + 1 < n_classes_; ++h)
    for (auto j : subset) out.push_back(genes_[profile_index(h, j)]);
  out.push_back(genes_[lambda_index()]);
  return ElicitationSpec(subset.size(), n_classes_, std::move(out));
}

SpecBuilder::SpecBuilder(const DecisionMatrix& m, std::size_t n_classes)
    : n_criteria_(m.cols()), n_classes_(n_classes) {
  if (n_classes_ < 2) throw ValidationError("class count must be at least 2");
  genes_.resize(4 * n_criteria_ + (n_classes_ - 1) * n_criteria_ + 1);
  for (std::size_t j = 0; j < n_criteria_; ++j) {
    const double lo = m.column_min(j), hi = m.column_max(j);
    // Thresholds default to [0, half the column spread]: a q/p/v beyond half
    // the observed range makes almost every pair indifferent (or vetoed),
    // a degenerate region that also poisons averaged ensemble parameters.
    const double half = 0.5 * (hi - lo);
    genes_[j] = GeneSpec::make_free(0.0, 1.0);                             // weight
    genes_[n_criteria_ + j] = GeneSpec::make_free(0.0, half);              // q
    genes_[2 * n_criteria_ + j] = GeneSpec::make_free(0.0, half);          // p
    genes_[3 * n_criteria_ + j] = GeneSpec::make_free(0.0, half);          // v
    for (std::size_t h = 0; h + 1 < n_classes_; ++h)
      genes_[4 * n_criteria_ + h * n_criteria_ + j] = GeneSpec::make_free(lo, hi);
  }
  genes_.back() = GeneSpec::make_free(0.5, 1.0);
}

std::size_t SpecBuilder::idx(std::size_t family, std::size_t j) const {
  if (j >= n_criteria_) throw ValidationError("criterion index out of range");
  return family * n_criteria_ + j;
}

SpecBuilder& SpecBuilder::fix_weight(std::size_t j, double v) {
  genes_[idx(0, j)] = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::fix_q(std::size_t j, double v) {
  genes_[idx(1, j)] = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::fix_p(std::size_t j, double v) {
  genes_[idx(2, j)] = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::fix_v(std::size_t j, double v) {
  genes_[idx(3, j)] = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::fix_profile(std::size_t h, std::size_t j, double v) {
  if (h + 1 >= n_classes_) throw ValidationError("profile index out of range");
  genes_[4 * n_criteria_ + h * n_criteria_ + j] = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::fix_lambda(double v) {
  genes_.back() = GeneSpec::make_fixed(v);
  return *this;
}
SpecBuilder& SpecBuilder::no_veto(std::size_t j) {
  return fix_v(j, kNoVeto);
}

SpecBuilder& SpecBuilder::bound_weight(std::size_t j, double lo, double hi) {
  genes_[idx(0, j)] = GeneSpec::make_free(lo, hi);
  return *this;
}
SpecBuilder& SpecBuilder::bound_q(std::size_t j, double lo, double hi) {
  genes_[idx(1, j)] = GeneSpec::make_free(lo, hi);
  return *this;
}
SpecBuilder& SpecBuilder::bound_p(std::size_t j, double lo, double hi) {
  genes_[idx(2, j)] = GeneSpec::make_free(lo, hi);
  return *this;
}
SpecBuilder& SpecBuilder::bound_v(std::size_t j, double lo, double hi) {
  genes_[idx(3, j)] = GeneSpec::make_free(lo, hi);
  return *this;
}
SpecBuilder& SpecBuilder::bound_profile(std::size_t h, std::size_t j, double lo, double hi) {
  if (h + 1 >= n_classes_) throw ValidationError("profile index out of range");
  genes_[4 * n_criteria_ + h * n_criteria_ + j] = GeneSpec::make_free(lo, hi);
  return *this;
}
SpecBuilder& SpecBuilder::bound_lambda(double lo, double hi) {
  genes_.back() = GeneSpec::make_free(lo, hi);
  return *this;
}

ElicitationSpec SpecBuilder::build() const {
  return ElicitationSpec(n_criteria_, n_classes_, genes_);
}

}  // namespace electre
