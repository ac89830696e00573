#include "electre/tri_b.hpp"

#include <cstddef>

namespace electre::trib {

double partial_concordance(double diff, double q, double p) {
  if (diff <= q) return 1.0;
  if (diff >= p) return 0.0;
  return (p - diff) / (p - q);
}

double global_concordance(std::span<const double> partials,
                          std::span<const double> weights) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < partials.size(); ++j) {
    num += weights[j] * partials[j];
    den += weights[j];
  }
  if (den <= 0.0) throw ValidationError("degenerate weights");
  return num / den;
}

double partial_discordance(double diff, double p, double v) {
  if (diff >= v) return 1.0;  // also the v == p boundary
  if (diff <= p) return 0.0;
  return (diff - p) / (v - p);
}

double credibility(double concordance, std::span<const double> discordances) {
  double sigma = concordance;
  for (double d : discordances) {
    if (d > concordance) sigma *= (1.0 - d) / (1.0 - concordance);
  }
  return sigma;
}

namespace {

// sigma(a, b) where diff_j = b_j - a_j; scratch avoids reallocating per pair.
double credibility_directed(std::span<const double> a, std::span<const double> b,
                            const TriBParameters& params,
                            std::vector<double>& concord, std::vector<double>& discord) {
  const std::size_t m = a.size();
  concord.resize(m);
  discord.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double diff = b[j] - a[j];
    concord[j] = partial_concordance(diff, params.q[j], params.p[j]);
    discord[j] = partial_discordance(diff, params.p[j], params.v[j]);
  }
  return credibility(global_concordance(concord, params.weights), discord);
}

}  // namespace

CredibilityPair credibility_pair(std::span<const double> x,
                                 std::span<const double> profile,
                                 const TriBParameters& params) {
  std::vector<double> concord, discord;
  CredibilityPair pair;
  pair.sigma_x_b = credibility_directed(x, profile, params, concord, discord);
  pair.sigma_b_x = credibility_directed(profile, x, params, concord, discord);
  return pair;
}

int classify_one(std::span<const double> x, const TriBParameters& params, Rule rule) {
  const auto& profiles = params.profiles;
  const int n_profiles = static_cast<int>(profiles.size());
  std::vector<double> concord, discord;

  if (rule == Rule::pessimistic) {
    for (int h = n_profiles - 1; h >= 0; --h) {
      std::span<const double> b{profiles[static_cast<std::size_t>(h)]};
      const double sigma_x_b = credibility_directed(x, b, params, concord, discord);
      if (!outranks(sigma_x_b, params.lambda)) continue;
      const double sigma_b_x = credibility_directed(b, x, params, concord, discord);
      if (!outranks(sigma_b_x, params.lambda)) return h + 1;
    }
    return 0;
  }

  for (int h = 0; h < n_profiles; ++h) {
    std::span<const double> b{profiles[static_cast<std::size_t>(h)]};
    const double sigma_b_x = credibility_directed(b, x, params, concord, discord);
    if (outranks(sigma_b_x, params.lambda)) return h;
  }
  return n_profiles;
}

Assignment classify(const DecisionMatrix& m, const TriBParameters& params, Rule rule) {
  Assignment out;
  out.rule = rule;
  out.classes.assign(m.rows(), 0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.rows());
  std::exception_ptr error;  // exceptions cannot leave an OpenMP region
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out.classes[static_cast<std::size_t>(i)] =
          classify_one(m.row(static_cast<std::size_t>(i)), params, rule);
    } catch (...) {
#pragma omp critical(electre_classify_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

Assignment classify_serial(const DecisionMatrix& m, const TriBParameters& params, Rule rule) {
  Assignment out;
  out.rule = rule;
  out.classes.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    out.classes.push_back(classify_one(m.row(i), params, rule));
  return out;
}

Assignment assign_pessimistic(const DecisionMatrix& m, const TriBParameters& params) {
  return classify(m, params, Rule::pessimistic);
}

Assignment assign_optimistic(const DecisionMatrix& m, const TriBParameters& params) {
  return classify(m, params, Rule::optimistic);
}

}  // namespace electre::trib
