#pragma once

// Straight-line reference implementation of the Tri-B assignment pipeline,
// kept deliberately free of any library headers so it can arbitrate the
// engine. Everything is a plain loop over plain vectors; no code is shared
// with src/.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Model {
  std::vector<double> weights;
  std::vector<double> q;
  std::vector<double> p;
  std::vector<double> v;                      // +inf disables the veto
  std::vector<std::vector<double>> profiles;  // worst class boundary first
  double lambda = 0.75;
};

// Per-criterion concordance with "a outranks b"; diff is b minus a on that
// criterion. Full support up to the indifference threshold, none from the
// preference threshold on, linear in between.
inline double concordance_j(double a, double b, double q, double p) {
  const double diff = b - a;
  if (diff <= q) return 1.0;
  if (diff >= p) return 0.0;
  return (p - diff) / (p - q);
}

// Per-criterion discordance; the veto saturates it at 1, anything within the
// preference threshold contributes nothing.
inline double discordance_j(double a, double b, double p, double v) {
  if (std::isinf(v)) return 0.0;
  const double diff = b - a;
  if (diff >= v) return 1.0;
  if (diff <= p) return 0.0;
  return (diff - p) / (v - p);
}

// Credibility of "a outranks b": the weighted concordance, discounted by
// every discordance exceeding it.
inline double sigma(const std::vector<double>& a, const std::vector<double>& b,
                    const Model& m) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += m.weights[j] * concordance_j(a[j], b[j], m.q[j], m.p[j]);
    den += m.weights[j];
  }
  const double big_c = num / den;
  double s = big_c;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = discordance_j(a[j], b[j], m.p[j], m.v[j]);
    if (d > big_c) s *= (1.0 - d) / (1.0 - big_c);
  }
  return s;
}

inline bool outranks(const std::vector<double>& a, const std::vector<double>& b,
                     const Model& m) {
  return sigma(a, b, m) >= m.lambda;
}

// Pessimistic rule: walk the profiles from the best down and stop at the
// first one the alternative is strictly preferred to (outranks it without
// being outranked back); the class just above it wins. Nothing beaten means
// the worst class.
inline int assign_pessimistic(const std::vector<double>& x, const Model& m) {
  for (int h = static_cast<int>(m.profiles.size()) - 1; h >= 0; --h) {
    if (outranks(x, m.profiles[h], m) && !outranks(m.profiles[h], x, m))
      return h + 1;
  }
  return 0;
}

// Optimistic rule: walk from the worst profile up and stop below the first
// profile that outranks the alternative; no profile doing so means the best
// class.
inline int assign_optimistic(const std::vector<double>& x, const Model& m) {
  for (std::size_t h = 0; h < m.profiles.size(); ++h) {
    if (outranks(m.profiles[h], x, m)) return static_cast<int>(h);
  }
  return static_cast<int>(m.profiles.size());
}

}  // namespace oracle
