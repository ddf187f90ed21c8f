#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

namespace dvpr {

// One full-image place descriptor: an ordered sequence of d reals. Held in
// double precision in memory; descriptor *files* store single-precision
// values and are widened on read (see descriptor_file.hpp).
struct Descriptor {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const Descriptor&) const = default;
};

// Identity of one observation: the robot that captured it, its index within
// that robot's sub-sequence, and its index in the original full trajectory.
struct FrameId {
  int robot = 0;
  std::int64_t local_index = 0;
  std::int64_t global_index = 0;

  bool operator==(const FrameId&) const = default;
};

// Euclidean distance, accumulated in double regardless of where the values
// came from. Throws DimensionMismatchError when dims differ.
double l2_distance(const Descriptor& a, const Descriptor& b);
double l2_distance_squared(const Descriptor& a, const Descriptor& b);

// Append-only set of (FrameId, Descriptor) pairs in insertion order.
// Rejects duplicate frames and mixed dimensions. One writer at a time;
// concurrent const reads are safe.
class DescriptorStore {
 public:
  struct Entry {
    FrameId id;
    Descriptor descriptor;
  };

  void insert(const FrameId& id, Descriptor descriptor);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t dim() const { return dim_; }  // 0 until the first insert

 private:
  std::vector<Entry> entries_;
  std::unordered_set<std::int64_t> global_indices_;
  std::size_t dim_ = 0;
};

struct NeighborResult {
  FrameId id;
  double distance = 0.0;
};

// Exhaustive linear scan for the closest entry. Entries for which
// exclude(id) returns true are skipped (pass nullptr to keep them all).
// Exact ties go to the smaller global_index. Empty candidate set -> nullopt.
std::optional<NeighborResult> nearest_neighbor(
    const Descriptor& query, const DescriptorStore& store,
    const std::function<bool(const FrameId&)>& exclude = nullptr);

}  // namespace dvpr
