#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dvpr/datagen.hpp"
#include "dvpr/descriptor.hpp"
#include "dvpr/simulation.hpp"

namespace dvpr {

// Flat key=value run description shared by the command-line tools. '#'
// starts a comment, blank lines are ignored, every key is known and appears
// at most once. Exactly one deployment source (descriptor_path + pose_path,
// or synthetic_places) and exactly one training source
// (training_descriptor_path, or training_count) must be chosen.
struct RunConfig {
  int n = 2;
  int k = 0;  // 0 picks k = n
  std::uint64_t seed = 0;
  int trials = 10;
  std::int64_t temporal_exclusion_window = 50;
  double gt_radius_m = 10.0;
  std::string output_dir = "out";

  // Deployment from files: descriptor container plus aligned pose file.
  std::string descriptor_path;
  std::string pose_path;

  // Deployment from the synthetic loop generator.
  std::int64_t synthetic_places = 0;
  int synthetic_passes = 2;
  double synthetic_noise = 0.3;
  std::uint64_t synthetic_seed = 1;

  // Shared mixture shape for synthetic deployment and sampled training.
  std::int64_t synthetic_dim = 32;
  int synthetic_components = 4;
  double synthetic_mean_range = 2.0;
  double synthetic_spread = 1.0;
  std::int64_t synthetic_mask_dims = 0;
  std::uint64_t synthetic_component_seed = 7;

  // Training from a descriptor container, or sampled from the mixture.
  std::string training_descriptor_path;
  std::int64_t training_count = 0;
  std::uint64_t training_seed = 2;

  int effective_k() const { return k == 0 ? n : k; }
};

RunConfig load_run_config(const std::string& path);

// Mixture described by the synthetic_* keys. The subspace mask models
// deployment-time distribution shift, so it applies to deployment sampling
// only; pass masked=false for training data.
MixtureSpec config_mixture(const RunConfig& cfg, bool masked);

// Training descriptors per the config: file contents, or
// training_count mixture samples drawn with training_seed.
std::vector<Descriptor> build_training(const RunConfig& cfg);

// Deployment trajectory per the config: file contents (descriptor and pose
// counts must agree), or a synthetic loop over synthetic_places places.
Trajectory build_deployment(const RunConfig& cfg);

}  // namespace dvpr
