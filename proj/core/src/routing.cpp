#include "dvpr/routing.hpp"

#include <algorithm>
#include <string>

#include "dvpr/errors.hpp"

namespace dvpr {

OwnershipMap OwnershipMap::modular(std::size_t k, int n) {
  if (n < 1) {
    throw ConfigError("ownership: robot count must be at least 1");
  }
  if (k == 0) {
    throw ConfigError("ownership: cluster count must be at least 1");
  }
  OwnershipMap map;
  map.n = n;
  map.owner_of_cluster.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    map.owner_of_cluster[c] = static_cast<int>(c % static_cast<std::size_t>(n));
  }
  return map;
}

BandwidthLedger::BandwidthLedger(int n) {
  if (n < 1) {
    throw ConfigError("ledger: robot count must be at least 1");
  }
  bytes_received_.assign(static_cast<std::size_t>(n), 0);
  query_count_.assign(static_cast<std::size_t>(n), 0);
}

void BandwidthLedger::record_unicast(int robot, std::uint64_t bytes) {
  if (robot < 0 || robot >= robots()) {
    throw ConfigError("ledger: robot index " + std::to_string(robot) +
                      " out of range");
  }
  bytes_received_[static_cast<std::size_t>(robot)] += bytes;
  query_count_[static_cast<std::size_t>(robot)] += 1;
  total_queries_ += 1;
}

void BandwidthLedger::record_broadcast(std::uint64_t bytes_per_robot) {
  for (std::size_t r = 0; r < bytes_received_.size(); ++r) {
    bytes_received_[r] += bytes_per_robot;
    query_count_[r] += 1;
  }
  total_queries_ += bytes_received_.size();
}

std::uint64_t BandwidthLedger::total_bytes() const {
  std::uint64_t total = 0;
  for (const std::uint64_t b : bytes_received_) {
    total += b;
  }
  return total;
}

int route(const ClusterModel& model, const OwnershipMap& ownership,
          const Descriptor& v) {
  if (ownership.k() != model.k()) {
    throw ConfigError("route: ownership covers " + std::to_string(ownership.k()) +
                      " clusters, model has " + std::to_string(model.k()));
  }
  return ownership.owner_of_cluster[assign_cluster(model, v)];
}

std::uint64_t query_bytes(std::size_t dim, std::size_t precision_bytes) {
  if (dim == 0 || precision_bytes == 0) {
    throw ConfigError("query_bytes: dim and precision must be at least 1");
  }
  return static_cast<std::uint64_t>(dim) * precision_bytes;
}

std::uint64_t broadcast_bytes_baseline(std::size_t dim,
                                       std::size_t precision_bytes, int n) {
  if (n < 1) {
    throw ConfigError("broadcast_bytes_baseline: robot count must be at least 1");
  }
  return query_bytes(dim, precision_bytes) * static_cast<std::uint64_t>(n);
}

double worst_balance_ratio(const BandwidthLedger& ledger) {
  if (ledger.total_queries() == 0) {
    throw UndefinedMetricError("worst_balance_ratio: no queries recorded");
  }
  const auto& counts = ledger.per_robot_query_count();
  const std::uint64_t busiest = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(busiest) * static_cast<double>(ledger.robots()) /
         static_cast<double>(ledger.total_queries());
}

}  // namespace dvpr
