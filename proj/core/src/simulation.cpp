#include "dvpr/simulation.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <utility>

#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

// Queries travel at single precision on the wire regardless of how the
// descriptors are held in memory.
constexpr std::size_t kQueryPrecisionBytes = 4;

}  // namespace

double position_distance(const Position& a, const Position& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool ground_truth_match(const Position& query, const Position& candidate,
                        double radius_m) {
  if (!(radius_m > 0.0)) {
    throw ConfigError("ground-truth radius must be positive");
  }
  const double dx = query[0] - candidate[0];
  const double dy = query[1] - candidate[1];
  const double dz = query[2] - candidate[2];
  return dx * dx + dy * dy + dz * dz <= radius_m * radius_m;
}

std::vector<FrameId> split_trajectory(std::size_t frame_count, int n) {
  if (n < 1) {
    throw ConfigError("split: robot count must be at least 1");
  }
  if (static_cast<std::size_t>(n) > frame_count) {
    throw InfeasibleSplitError("split: cannot give " + std::to_string(n) +
                               " robots at least one of " +
                               std::to_string(frame_count) + " frames");
  }
  std::vector<FrameId> frames;
  frames.reserve(frame_count);
  const std::size_t base = frame_count / static_cast<std::size_t>(n);
  const std::size_t extra = frame_count % static_cast<std::size_t>(n);
  std::size_t global = 0;
  for (int robot = 0; robot < n; ++robot) {
    const std::size_t block =
        base + (static_cast<std::size_t>(robot) < extra ? 1 : 0);
    for (std::size_t local = 0; local < block; ++local, ++global) {
      frames.push_back(FrameId{robot, static_cast<std::int64_t>(local),
                               static_cast<std::int64_t>(global)});
    }
  }
  return frames;
}

SimulationResult run_simulation(const SimulationInput& input,
                                const ClusterModel& model,
                                const OwnershipMap& ownership,
                                const SwarmConfig& cfg, double gt_radius_m) {
  const std::size_t count = input.descriptors.size();
  if (input.frames.size() != count || input.positions.size() != count) {
    throw ConfigError("simulation input arrays must align 1:1");
  }
  if (cfg.n < 1) {
    throw ConfigError("simulation: robot count must be at least 1");
  }
  if (cfg.temporal_exclusion_window < 0) {
    throw ConfigError("simulation: temporal exclusion window must be >= 0");
  }
  if (!(gt_radius_m > 0.0)) {
    throw ConfigError("simulation: ground-truth radius must be positive");
  }

  const bool decentralized = cfg.mode == SimMode::decentralized;
  if (decentralized) {
    if (ownership.n != cfg.n) {
      throw ConfigError("simulation: ownership robot count " +
                        std::to_string(ownership.n) + " disagrees with n = " +
                        std::to_string(cfg.n));
    }
    if (ownership.k() != model.k()) {
      throw ConfigError("simulation: ownership cluster count disagrees with model");
    }
  }

  std::size_t dim = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0) {
      dim = input.descriptors[i].dim();
      if (dim == 0) {
        throw DataError("simulation: zero-dimensional descriptors");
      }
    } else if (input.descriptors[i].dim() != dim) {
      throw DimensionMismatchError("simulation: mixed descriptor dimensions");
    }
    if (i > 0 && input.frames[i].global_index <= input.frames[i - 1].global_index) {
      throw ConfigError("simulation: frames must arrive in ascending global order");
    }
    if (input.frames[i].robot < 0 || input.frames[i].robot >= cfg.n) {
      throw ConfigError("simulation: frame robot index out of range");
    }
  }
  if (decentralized && count > 0 && model.dim() != dim) {
    throw DimensionMismatchError("simulation: model dimension " +
                                 std::to_string(model.dim()) +
                                 " disagrees with dataset dimension " +
                                 std::to_string(dim));
  }

  SimulationResult result{{}, BandwidthLedger(cfg.n), {}};
  result.records.reserve(count);
  std::vector<DescriptorStore> stores(decentralized
                                          ? static_cast<std::size_t>(cfg.n)
                                          : std::size_t{1});
  std::unordered_map<std::int64_t, std::size_t> index_of_global;
  index_of_global.reserve(count);
  const std::uint64_t unicast =
      count > 0 ? query_bytes(dim, kQueryPrecisionBytes) : 0;

  for (std::size_t i = 0; i < count; ++i) {
    const FrameId& q = input.frames[i];
    const Descriptor& v = input.descriptors[i];
    const auto excluded = [&](const FrameId& candidate) {
      return candidate.robot == q.robot &&
             std::llabs(candidate.local_index - q.local_index) <=
                 cfg.temporal_exclusion_window;
    };

    QueryRecord record;
    record.query = q;
    DescriptorStore* store = nullptr;
    if (decentralized) {
      record.routed_robot = route(model, ownership, v);
      store = &stores[static_cast<std::size_t>(record.routed_robot)];
      record.bytes_sent = unicast;
      result.ledger.record_unicast(record.routed_robot, record.bytes_sent);
    } else {
      record.routed_robot = -1;
      store = &stores.front();
      record.bytes_sent = broadcast_bytes_baseline(dim, kQueryPrecisionBytes, cfg.n);
      result.ledger.record_broadcast(unicast);
    }

    const auto nn = nearest_neighbor(v, *store, excluded);
    if (nn.has_value()) {
      record.match = nn->id;
      record.nn_distance = nn->distance;
      const std::size_t match_index = index_of_global.at(nn->id.global_index);
      record.is_true_positive = ground_truth_match(
          input.positions[i], input.positions[match_index], gt_radius_m);
    }
    for (std::size_t j = 0; j < i && !record.has_gt_match; ++j) {
      if (excluded(input.frames[j])) {
        continue;
      }
      record.has_gt_match =
          ground_truth_match(input.positions[i], input.positions[j], gt_radius_m);
    }

    // Store-on-query: the frame joins the map only after it was searched.
    store->insert(q, v);
    index_of_global.emplace(q.global_index, i);
    result.records.push_back(std::move(record));
  }

  result.final_stores = std::move(stores);
  return result;
}

}  // namespace dvpr
