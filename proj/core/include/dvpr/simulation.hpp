#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dvpr/clustering.hpp"
#include "dvpr/descriptor.hpp"
#include "dvpr/routing.hpp"

namespace dvpr {

using Position = std::array<double, 3>;

double position_distance(const Position& a, const Position& b);

// Two observations depict the same place when their camera positions lie
// within radius_m meters of each other (boundary inclusive).
bool ground_truth_match(const Position& query, const Position& candidate,
                        double radius_m);

enum class SimMode { decentralized, centralized };

struct SwarmConfig {
  int n = 1;
  std::int64_t temporal_exclusion_window = 50;
  SimMode mode = SimMode::decentralized;
};

// Outcome of one simulated query. routed_robot is -1 in centralized mode,
// where every robot receives the query. has_gt_match reports whether any
// admissible already-processed frame (any cluster, temporal exclusion
// applied) was a true place match, so both modes share a recall denominator.
struct QueryRecord {
  FrameId query;
  int routed_robot = -1;
  std::optional<FrameId> match;
  std::optional<double> nn_distance;
  bool has_gt_match = false;
  bool is_true_positive = false;
  std::uint64_t bytes_sent = 0;
};

// Annotates frame_count frames with FrameIds for a contiguous split over n
// robots: block sizes floor(N/n), with the first N % n robots taking one
// extra frame. Original order is preserved (global_index == input position).
std::vector<FrameId> split_trajectory(std::size_t frame_count, int n);

// One trajectory in capture order: descriptors and camera positions, 1:1.
struct Trajectory {
  std::vector<Descriptor> descriptors;
  std::vector<Position> positions;
};

struct SimulationInput {
  std::span<const Descriptor> descriptors;
  std::span<const FrameId> frames;
  std::span<const Position> positions;
};

struct SimulationResult {
  std::vector<QueryRecord> records;
  BandwidthLedger ledger;
  // Post-run stores: one per robot in decentralized mode, a single global
  // store in centralized mode. Every frame lives in exactly one of them.
  std::vector<DescriptorStore> final_stores;
};

// Replays the trajectory as one interleaved timeline in ascending
// global_index order. Each frame queries before it is stored: decentralized
// mode routes to the single owning robot's store, centralized mode scans the
// global store and charges the n-robot broadcast baseline. The temporal
// exclusion window removes same-robot frames whose local_index differs by at
// most the window, from both the candidate pool and the ground-truth pool.
SimulationResult run_simulation(const SimulationInput& input,
                                const ClusterModel& model,
                                const OwnershipMap& ownership,
                                const SwarmConfig& cfg, double gt_radius_m);

}  // namespace dvpr
