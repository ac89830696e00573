#pragma once

#include <span>
#include <vector>

#include "electre/core.hpp"

namespace electre::trib {

/// Per-criterion concordance c_j for "a outranks b", where diff is the signed
/// margin of b over a on that criterion (g_j(b) - g_j(a)). 1 up to the
/// indifference threshold, 0 from the preference threshold on, linear between.
/// With q == p the boundary diff == q still counts as concordant.
double partial_concordance(double diff, double q, double p);

/// Weighted mean of the partial concordances. Weights need not sum to 1; the
/// denominator normalizes. Throws ValidationError on zero total weight.
double global_concordance(std::span<const double> partials,
                          std::span<const double> weights);

/// Per-criterion discordance against "a outranks b"; same diff convention as
/// partial_concordance. 0 up to the preference threshold, 1 from the veto on.
/// v == +inf disables the veto (always 0); v == p degenerates to a step that
/// is 1 at diff == p.
double partial_discordance(double diff, double p, double v);

/// Credibility sigma: the global concordance discounted by every discordance
/// that exceeds it, sigma = C * prod_{D_j > C} (1 - D_j) / (1 - C).
double credibility(double concordance, std::span<const double> discordances);

inline bool outranks(double sigma, double lambda) { return sigma >= lambda; }

/// Both credibility directions for one alternative/profile pair.
struct CredibilityPair {
  double sigma_x_b = 0.0;  // x outranks b
  double sigma_b_x = 0.0;  // b outranks x
};

CredibilityPair credibility_pair(std::span<const double> x,
                                 std::span<const double> profile,
                                 const TriBParameters& params);

/// Class index for a single alternative. Pessimistic: scan profiles from best
/// to worst, stop at the first one the alternative is strictly preferred to
/// (outranks without being outranked) and take the class above it. Optimistic:
/// scan from worst to best, stop below the first profile that outranks the
/// alternative.
int classify_one(std::span<const double> x, const TriBParameters& params, Rule rule);

struct Assignment {
  std::vector<int> classes;
  Rule rule = Rule::pessimistic;
};

/// Batch classification; the unqualified version fans rows out across OpenMP
/// threads, the _serial twin is the plain loop kept as the reference. Both are
/// bit-identical because classify_one is pure.
Assignment classify(const DecisionMatrix& m, const TriBParameters& params, Rule rule);
Assignment classify_serial(const DecisionMatrix& m, const TriBParameters& params, Rule rule);

Assignment assign_pessimistic(const DecisionMatrix& m, const TriBParameters& params);
Assignment assign_optimistic(const DecisionMatrix& m, const TriBParameters& params);

}  // namespace electre::trib
