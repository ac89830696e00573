#include "electre/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <span>

namespace electre::cluster {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

int nearest_centroid(std::span<const double> x,
                     const std::vector<std::vector<double>>& centroids) {
  int best = 0;
  double best_d = sq_dist(x, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = sq_dist(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

std::vector<std::vector<double>> kmeanspp_seed(const DecisionMatrix& m, std::size_t k,
                                               Rng& rng) {
  if (k == 0) throw ValidationError("cluster count must be positive");
  std::set<std::vector<double>> distinct;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    distinct.emplace(r.begin(), r.end());
  }
  if (distinct.size() < k) throw ValidationError("not enough distinct observations");

  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  auto row_vec = [&m](std::size_t i) {
    auto r = m.row(i);
    return std::vector<double>(r.begin(), r.end());
  };
  const std::size_t first = rng.index(m.rows());
  centroids.push_back(row_vec(first));

  // d2[i] tracks the squared distance to the nearest chosen centroid.
  std::vector<double> d2(m.rows());
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    d2[i] = sq_dist(m.row(i), centroids[0]);
    total += d2[i];
  }

  const auto n_trials =
      static_cast<std::size_t>(2 + std::log(static_cast<double>(k)));
  std::vector<double> cand_d2(m.rows());
  while (centroids.size() < k) {
    // Greedy k-means++: draw a few candidates from the D^2 distribution and
    // keep the one that shrinks the total potential the most.
    std::size_t best_pick = 0;
    double best_potential = -1.0;
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
      // total > 0 is guaranteed: fewer centroids than distinct rows.
      double target = rng.uniform() * total;
      std::size_t pick = m.rows() - 1;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (d2[i] <= 0.0) continue;  // already a centroid (or a duplicate of one)
        target -= d2[i];
        if (target <= 0.0) {
          pick = i;
          break;
        }
      }
      // Rounding can walk target past the last positive mass; fall back to it.
      if (d2[pick] <= 0.0)
        for (std::size_t i = m.rows(); i-- > 0;)
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
      double potential = 0.0;
      auto cand = m.row(pick);
      for (std::size_t i = 0; i < m.rows(); ++i)
        potential += std::min(d2[i], sq_dist(m.row(i), cand));
      if (best_potential < 0.0 || potential < best_potential) {
        best_potential = potential;
        best_pick = pick;
      }
    }
    centroids.push_back(row_vec(best_pick));
    total = 0.0;
    auto chosen = m.row(best_pick);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      d2[i] = std::min(d2[i], sq_dist(m.row(i), chosen));
      total += d2[i];
    }
  }
  return centroids;
}

Clustering kmeans_run(const DecisionMatrix& m, std::vector<std::vector<double>> seeds) {
  constexpr std::size_t kMaxPasses = 300;
  const std::size_t k = seeds.size();
  const std::size_t n = m.rows(), cols = m.cols();

  Clustering result;
  result.k = k;
  result.centroids = std::move(seeds);
  result.membership.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    result.membership[i] = nearest_centroid(m.row(i), result.centroids);

  for (result.passes = 1; result.passes <= kMaxPasses; ++result.passes) {
    // Recompute centroids as member means.
    std::vector<std::vector<double>> sums(k, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(result.membership[i]);
      ++counts[c];
      auto r = m.row(i);
      for (std::size_t j = 0; j < cols; ++j) sums[c][j] += r[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // repaired below
      for (std::size_t j = 0; j < cols; ++j)
        result.centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    // Re-seed each emptied cluster with the observation farthest from its
    // current centroid; claiming it empties nothing (its old cluster keeps
    // its centroid until the next pass).
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(result.membership[i]);
        const double d = sq_dist(m.row(i), result.centroids[own]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      auto r = m.row(far);
      result.centroids[c].assign(r.begin(), r.end());
      result.membership[far] = static_cast<int>(c);
      counts[c] = 1;
    }

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = nearest_centroid(m.row(i), result.centroids);
      if (c != result.membership[i]) {
        result.membership[i] = c;
        changed = true;
      }
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sse += sq_dist(m.row(i),
                     result.centroids[static_cast<std::size_t>(result.membership[i])]);
    result.sse_trace.push_back(sse);
    result.sse = sse;
    if (!changed) break;
  }
  return result;
}

Clustering kmeans(const DecisionMatrix& m, std::size_t k, Rng& rng) {
  return kmeans_run(m, kmeanspp_seed(m, k, rng));
}

ReferenceLabels order_clusters(const Clustering& clustering) {
  const std::size_t k = clustering.k;
  auto norm2 = [](const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += x * x;
    return s;
  };
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double na = norm2(clustering.centroids[a]);
    const double nb = norm2(clustering.centroids[b]);
    if (na != nb) return na < nb;
    return clustering.centroids[a] < clustering.centroids[b];
  });

  std::vector<int> label_of(k);
  for (std::size_t rank = 0; rank < k; ++rank) label_of[order[rank]] = static_cast<int>(rank);

  ReferenceLabels labels;
  labels.class_count = static_cast<int>(k);
  labels.source = LabelSource::clusters;
  labels.labels.reserve(clustering.membership.size());
  for (int c : clustering.membership)
    labels.labels.push_back(label_of[static_cast<std::size_t>(c)]);
  return labels;
}

ReferenceLabels cluster_labels(const DecisionMatrix& m, std::size_t k, Rng& rng) {
  return order_clusters(kmeans(m, k, rng));
}

}  // namespace electre::cluster
