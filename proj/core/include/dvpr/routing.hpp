#pragma once

#include <cstdint>
#include <vector>

#include "dvpr/clustering.hpp"

namespace dvpr {

// Which robot owns each cluster. The modular rule keeps ownership the
// identity permutation when k == n and wraps (c % n) when k exceeds n.
struct OwnershipMap {
  std::vector<int> owner_of_cluster;
  int n = 0;

  std::size_t k() const { return owner_of_cluster.size(); }

  static OwnershipMap modular(std::size_t k, int n);
};

// Per-robot reception accounting. Unicast queries count toward one robot;
// a broadcast counts one reception at every robot, so total_queries tracks
// receptions and the per-robot counts always sum to it in either mode.
class BandwidthLedger {
 public:
  explicit BandwidthLedger(int n);

  void record_unicast(int robot, std::uint64_t bytes);
  void record_broadcast(std::uint64_t bytes_per_robot);

  int robots() const { return static_cast<int>(bytes_received_.size()); }
  std::uint64_t total_queries() const { return total_queries_; }
  std::uint64_t total_bytes() const;
  const std::vector<std::uint64_t>& per_robot_bytes_received() const {
    return bytes_received_;
  }
  const std::vector<std::uint64_t>& per_robot_query_count() const {
    return query_count_;
  }

 private:
  std::vector<std::uint64_t> bytes_received_;
  std::vector<std::uint64_t> query_count_;
  std::uint64_t total_queries_ = 0;
};

// The single recipient for a query: owner of its nearest centroid's cluster.
int route(const ClusterModel& model, const OwnershipMap& ownership,
          const Descriptor& v);

// Payload of one routed query: d values at the wire precision.
std::uint64_t query_bytes(std::size_t dim, std::size_t precision_bytes);

// What the same query would cost if sent to every robot instead.
std::uint64_t broadcast_bytes_baseline(std::size_t dim,
                                       std::size_t precision_bytes, int n);

// Busiest robot's share of queries over the perfectly balanced share:
// max_r count_r / (total / n). 1.0 is perfect balance, n is total collapse.
// Throws UndefinedMetricError when the ledger has no queries.
double worst_balance_ratio(const BandwidthLedger& ledger);

}  // namespace dvpr
