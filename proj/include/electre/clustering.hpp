#pragma once

#include <cstddef>
#include <vector>

#include "electre/core.hpp"
#include "electre/rng.hpp"

namespace electre::cluster {

struct Clustering {
  std::vector<std::vector<double>> centroids;  // k x criteria
  std::vector<int> membership;                 // cluster index per alternative
  std::size_t k = 0;
  double sse = 0.0;                // within-cluster squared error at the fixed point
  std::size_t passes = 0;          // Lloyd passes until stability (or the cap)
  std::vector<double> sse_trace;   // SSE after each pass; never increases
};

/// K-means++ seeding: first centroid uniform over rows, each later one drawn
/// with probability D(x)^2 / sum D(x)^2 where D(x) is the distance to the
/// nearest centroid chosen so far. Uses the greedy refinement common in
/// practice (and in scikit-learn): per step, 2 + floor(ln k) candidates are
/// drawn from that distribution and the one minimising the resulting total
/// potential is kept. Throws if the matrix has fewer than k distinct rows
/// ("not enough distinct observations").
std::vector<std::vector<double>> kmeanspp_seed(const DecisionMatrix& m, std::size_t k,
                                               Rng& rng);

/// Lloyd iteration from the given seeds to a fixed point (assignments stable
/// for a full pass), capped at 300 passes. A cluster emptied during a pass is
/// re-seeded with the observation farthest from its current centroid.
Clustering kmeans_run(const DecisionMatrix& m, std::vector<std::vector<double>> seeds);

/// Seed + run in one call.
Clustering kmeans(const DecisionMatrix& m, std::size_t k, Rng& rng);

/// Ranks clusters by centroid distance from the origin: nearest becomes the
/// worst class (label 0), farthest the best (label k-1). Equal norms fall back
/// to lexicographic centroid order, smaller = worse.
ReferenceLabels order_clusters(const Clustering& clustering);

/// Ordered surrogate labels in one call: seed, run, rank.
ReferenceLabels cluster_labels(const DecisionMatrix& m, std::size_t k, Rng& rng);

}  // namespace electre::cluster
