#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dvpr/descriptor.hpp"
#include "dvpr/simulation.hpp"

namespace dvpr {

struct MixtureComponent {
  Descriptor mean;
  double spread = 1.0;  // per-dimension standard deviation
  double weight = 1.0;
};

// Isotropic Gaussian mixture over descriptor space. With subspace_mask set,
// dimensions outside the mask are pinned to the component mean (zero
// variance): samples occupy a subspace of the full mixture's support, which
// is how deployment-time distribution shift is modeled.
struct MixtureSpec {
  std::vector<MixtureComponent> components;
  std::size_t dim = 0;
  std::optional<std::vector<std::size_t>> subspace_mask;  // active dimensions
};

// count independent draws; component choice by weight, then mean + spread
// times a unit gaussian per active dimension. Bit-identical for a fixed
// (spec, count, seed).
std::vector<Descriptor> sample_mixture(const MixtureSpec& spec,
                                       std::size_t count, std::uint64_t seed);

// A closed ring of n_places revisited passes times. Revisits repeat the
// exact position; adjacent places are spaced at three ground-truth radii, so
// the only true matches are revisits of the same place.
struct SyntheticTrajectory {
  Trajectory trajectory;
  // (earlier, later) frame index pairs that depict the same place.
  std::vector<std::pair<std::size_t, std::size_t>> revisit_pairs;
};

// Samples one base descriptor per place from spec, then emits `passes` full
// loops. The first pass reports each base exactly; every later visit
// re-samples it with additive noise (descriptor_noise times a unit gaussian
// per active dimension), so noise 0 reproduces the base bit-identically.
SyntheticTrajectory make_loop_trajectory(const MixtureSpec& spec,
                                         std::size_t n_places, int passes,
                                         double descriptor_noise,
                                         std::uint64_t seed,
                                         double gt_radius_m = 10.0);

// Convenience spec: `components` equally weighted components with means
// drawn uniformly from [-mean_range, mean_range]^dim and a shared spread.
// mask_dims > 0 restricts samples to the first mask_dims dimensions.
MixtureSpec make_random_mixture(std::size_t dim, int components, double spread,
                                double mean_range, std::uint64_t seed,
                                std::size_t mask_dims = 0);

}  // namespace dvpr
