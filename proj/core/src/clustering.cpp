#include "dvpr/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "dvpr/errors.hpp"
#include "dvpr/rng.hpp"

namespace dvpr {

namespace {

std::size_t nearest_centroid_index(std::span<const Descriptor> centroids,
                                   const Descriptor& v, double* dist_sq_out) {
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = l2_distance_squared(v, centroids[c]);
    if (d < best_sq) {  // strict: ties keep the smaller index
      best_sq = d;
      best = c;
    }
  }
  if (dist_sq_out != nullptr) {
    *dist_sq_out = best_sq;
  }
  return best;
}

std::size_t count_distinct(std::span<const Descriptor> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].values < points[b].values;
  });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || points[order[i]].values != points[order[i - 1]].values) {
      ++distinct;
    }
  }
  return distinct;
}

std::vector<Descriptor> kmeanspp_init(std::span<const Descriptor> points,
                                      std::size_t k, std::mt19937_64& rng) {
  std::vector<Descriptor> centroids;
  centroids.reserve(k);
  centroids.push_back(points[uniform_below(rng, points.size())]);

  std::vector<double> dist_sq(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    dist_sq[i] = l2_distance_squared(points[i], centroids.front());
  }
  while (centroids.size() < k) {
    double total = 0.0;
    for (const double d : dist_sq) {
      total += d;
    }
    // total > 0: otherwise every point coincides with a chosen centroid,
    // which the distinct-count precondition rules out.
    const double r = uniform_unit(rng) * total;
    std::size_t chosen = points.size();
    double cum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      cum += dist_sq[i];
      if (cum > r) {
        chosen = i;
        break;
      }
    }
    if (chosen == points.size()) {  // fp slack: fall back to the last point with mass
      for (std::size_t i = points.size(); i-- > 0;) {
        if (dist_sq[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centroids.push_back(points[chosen]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist_sq[i] =
          std::min(dist_sq[i], l2_distance_squared(points[i], centroids.back()));
    }
  }
  return centroids;
}

struct Assignment {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> counts;
  std::vector<double> member_sq;  // squared distance to the labeled centroid
};

void assign_all(std::span<const Descriptor> points,
                std::span<const Descriptor> centroids, Assignment& a) {
  a.labels.resize(points.size());
  a.member_sq.resize(points.size());
  a.counts.assign(centroids.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    a.labels[i] = nearest_centroid_index(centroids, points[i], &a.member_sq[i]);
    ++a.counts[a.labels[i]];
  }
}

// Re-seeds every empty cluster to the point farthest from its nearest
// centroid, stealing it from its current cluster. Sole members are never
// stolen, so a repair cannot create a new empty cluster; when an empty
// cluster exists some cluster must hold >= 2 points (k <= N).
bool repair_empty_clusters(std::span<const Descriptor> points,
                           std::vector<Descriptor>& centroids, Assignment& a) {
  bool repaired = false;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (a.counts[c] != 0) {
      continue;
    }
    std::size_t victim = points.size();
    double worst = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (a.counts[a.labels[i]] < 2) {
        continue;
      }
      if (a.member_sq[i] > worst) {  // strict: ties keep the smaller index
        worst = a.member_sq[i];
        victim = i;
      }
    }
    if (victim == points.size()) {
      continue;
    }
    --a.counts[a.labels[victim]];
    a.labels[victim] = c;
    a.counts[c] = 1;
    a.member_sq[victim] = 0.0;
    centroids[c] = points[victim];
    repaired = true;
  }
  return repaired;
}

std::vector<Descriptor> group_means(std::span<const Descriptor> points,
                                    const Assignment& a, std::size_t k,
                                    std::size_t dim) {
  std::vector<Descriptor> means(k);
  for (auto& m : means) {
    m.values.assign(dim, 0.0);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& sum = means[a.labels[i]].values;
    const auto& v = points[i].values;
    for (std::size_t d = 0; d < dim; ++d) {
      sum[d] += v[d];
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double count = static_cast<double>(a.counts[c]);
    for (double& value : means[c].values) {
      value /= count;
    }
  }
  return means;
}

}  // namespace

ClusterModel train_kmeans(std::span<const Descriptor> points, std::size_t k,
                          std::uint64_t seed, int max_iters, double tol,
                          std::vector<double>* sse_trace) {
  if (points.empty()) {
    throw EmptyInputError("train_kmeans: no training points");
  }
  if (k == 0) {
    throw InfeasibleKError("train_kmeans: k must be at least 1");
  }
  if (max_iters < 1) {
    throw ConfigError("train_kmeans: max_iters must be at least 1");
  }
  if (!(tol >= 0.0)) {
    throw ConfigError("train_kmeans: tol must be non-negative");
  }
  const std::size_t dim = points.front().dim();
  if (dim == 0) {
    throw DataError("train_kmeans: zero-dimensional training points");
  }
  for (const auto& p : points) {
    if (p.dim() != dim) {
      throw DimensionMismatchError("train_kmeans: mixed training dimensions");
    }
  }
  if (k > count_distinct(points)) {
    throw InfeasibleKError("train_kmeans: k = " + std::to_string(k) +
                           " exceeds the distinct point count");
  }
  if (sse_trace != nullptr) {
    sse_trace->clear();
  }

  std::mt19937_64 rng(seed);
  std::vector<Descriptor> centroids = kmeanspp_init(points, k, rng);
  Assignment a;
  assign_all(points, centroids, a);
  repair_empty_clusters(points, centroids, a);

  int iterations = 0;
  for (int iter = 1; iter <= max_iters; ++iter) {
    iterations = iter;
    std::vector<Descriptor> updated = group_means(points, a, k, dim);
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      shift = std::max(shift, l2_distance(centroids[c], updated[c]));
    }
    centroids = std::move(updated);

    const std::vector<std::size_t> previous_labels = a.labels;
    assign_all(points, centroids, a);
    const bool repaired = repair_empty_clusters(points, centroids, a);
    if (sse_trace != nullptr) {
      double objective = 0.0;
      for (const double d : a.member_sq) {
        objective += d;
      }
      sse_trace->push_back(objective);
    }
    // Never declare convergence right after a repair: the re-seeded centroid
    // has not been through a mean update yet.
    if (!repaired && (a.labels == previous_labels || shift <= tol)) {
      break;
    }
  }

  ClusterModel model;
  model.centroids = std::move(centroids);
  model.training_meta.iterations_run = iterations;
  model.training_meta.seed = seed;
  model.training_meta.final_sse = sse(model, points);
  return model;
}

std::size_t assign_cluster(const ClusterModel& model, const Descriptor& v) {
  if (model.k() == 0) {
    throw ConfigError("assign_cluster: model has no centroids");
  }
  return nearest_centroid_index(model.centroids, v, nullptr);
}

double sse(const ClusterModel& model, std::span<const Descriptor> points) {
  if (model.k() == 0) {
    throw ConfigError("sse: model has no centroids");
  }
  double total = 0.0;
  for (const auto& p : points) {
    double dist_sq = 0.0;
    nearest_centroid_index(model.centroids, p, &dist_sq);
    total += dist_sq;
  }
  return total;
}

}  // namespace dvpr
