#include "dvpr/descriptor.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatchError(std::string(what) + ": " + std::to_string(a) +
                                 " vs " + std::to_string(b));
  }
}

}  // namespace

double l2_distance_squared(const Descriptor& a, const Descriptor& b) {
  require_same_dim(a.dim(), b.dim(), "descriptor dimension mismatch");
  const double* x = a.values.data();
  const double* y = b.values.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

double l2_distance(const Descriptor& a, const Descriptor& b) {
  return std::sqrt(l2_distance_squared(a, b));
}

void DescriptorStore::insert(const FrameId& id, Descriptor descriptor) {
  if (descriptor.dim() == 0) {
    throw DataError("cannot store a zero-dimensional descriptor");
  }
  if (entries_.empty()) {
    dim_ = descriptor.dim();
  } else {
    require_same_dim(descriptor.dim(), dim_, "store dimension mismatch");
  }
  if (!global_indices_.insert(id.global_index).second) {
    throw DataError("duplicate frame id: global index " +
                    std::to_string(id.global_index));
  }
  entries_.push_back(Entry{id, std::move(descriptor)});
}

std::optional<NeighborResult> nearest_neighbor(
    const Descriptor& query, const DescriptorStore& store,
    const std::function<bool(const FrameId&)>& exclude) {
  if (!store.empty()) {
    require_same_dim(query.dim(), store.dim(), "query dimension mismatch");
  }
  const DescriptorStore::Entry* best = nullptr;
  double best_sq = std::numeric_limits<double>::infinity();
  for (const auto& entry : store.entries()) {
    if (exclude && exclude(entry.id)) {
      continue;
    }
    const double dist_sq = l2_distance_squared(query, entry.descriptor);
    if (best == nullptr || dist_sq < best_sq ||
        (dist_sq == best_sq && entry.id.global_index < best->id.global_index)) {
      best = &entry;
      best_sq = dist_sq;
    }
  }
  if (best == nullptr) {
    return std::nullopt;
  }
  // sqrt of the tracked square so the reported distance is bit-identical to
  // l2_distance(query, matched descriptor).
  return NeighborResult{best->id, std::sqrt(best_sq)};
}

}  // namespace dvpr
