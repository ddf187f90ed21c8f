#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dvpr/descriptor.hpp"

namespace dvpr {

struct TrainingMeta {
  int iterations_run = 0;
  double final_sse = 0.0;
  std::uint64_t seed = 0;
};

// k centroids over descriptor space plus how they were fit. Treated as
// immutable once trained; persists through the descriptor file format.
struct ClusterModel {
  std::vector<Descriptor> centroids;
  TrainingMeta training_meta;

  std::size_t k() const { return centroids.size(); }
  std::size_t dim() const { return centroids.empty() ? 0 : centroids.front().dim(); }
};

// Lloyd's algorithm seeded with k-means++. Deterministic: identical
// (points, k, seed, max_iters, tol) reproduce bit-identical centroids.
// Stops when the maximum centroid displacement of an update falls to tol or
// the assignment reaches an exact fixed point, whichever comes first, and
// never on an iteration that had to repair an empty cluster; max_iters caps
// the loop regardless. A centroid that loses all members is re-seeded to the
// point farthest from its nearest centroid. final_sse is recomputed from the
// finished model over the training set. If sse_trace is non-null it is
// cleared and receives the objective once per iteration (non-increasing).
//
// Requires a non-empty training set with uniform dimension and
// 1 <= k <= number of distinct points.
ClusterModel train_kmeans(std::span<const Descriptor> points, std::size_t k,
                          std::uint64_t seed, int max_iters = 100,
                          double tol = 1e-6,
                          std::vector<double>* sse_trace = nullptr);

// Index of the nearest centroid; exact ties go to the smaller index.
std::size_t assign_cluster(const ClusterModel& model, const Descriptor& v);

// Sum of squared distances of every point to its nearest centroid.
double sse(const ClusterModel& model, std::span<const Descriptor> points);

}  // namespace dvpr
