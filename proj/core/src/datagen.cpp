#include "dvpr/datagen.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dvpr/errors.hpp"
#include "dvpr/rng.hpp"

namespace dvpr {

namespace {

// Returns active[d] for every dimension; no mask means all active.
std::vector<bool> active_dims(const MixtureSpec& spec) {
  std::vector<bool> active(spec.dim, !spec.subspace_mask.has_value());
  if (spec.subspace_mask) {
    if (spec.subspace_mask->empty())
      throw ConfigError("subspace mask must list at least one dimension");
    for (std::size_t d : *spec.subspace_mask) {
      if (d >= spec.dim) throw ConfigError("subspace mask dimension out of range");
      if (active[d]) throw ConfigError("duplicate dimension in subspace mask");
      active[d] = true;
    }
  }
  return active;
}

void validate_spec(const MixtureSpec& spec) {
  if (spec.dim == 0) throw ConfigError("mixture dim must be positive");
  if (spec.components.empty()) throw ConfigError("mixture needs at least one component");
  double total_weight = 0.0;
  for (const MixtureComponent& c : spec.components) {
    if (c.mean.dim() != spec.dim)
      throw DimensionMismatchError("component mean dim does not match mixture dim");
    if (!(c.spread >= 0.0)) throw ConfigError("component spread must be non-negative");
    if (!(c.weight >= 0.0)) throw ConfigError("component weight must be non-negative");
    total_weight += c.weight;
  }
  if (!(total_weight > 0.0)) throw ConfigError("mixture weights must not all be zero");
}

std::size_t pick_component(const MixtureSpec& spec, std::mt19937_64& rng) {
  double total_weight = 0.0;
  for (const MixtureComponent& c : spec.components) total_weight += c.weight;
  const double u = uniform_unit(rng) * total_weight;
  double cum = 0.0;
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    cum += spec.components[i].weight;
    if (u < cum) return i;
  }
  return spec.components.size() - 1;  // guard against fp undershoot
}

}  // namespace

std::vector<Descriptor> sample_mixture(const MixtureSpec& spec,
                                       std::size_t count, std::uint64_t seed) {
  validate_spec(spec);
  const std::vector<bool> active = active_dims(spec);
  std::mt19937_64 rng(seed);
  std::vector<Descriptor> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const MixtureComponent& c = spec.components[pick_component(spec, rng)];
    Descriptor d;
    d.values.resize(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      // Inactive dimensions carry the component mean with zero variance.
      d.values[j] = active[j] ? c.mean.values[j] + c.spread * gaussian(rng)
                              : c.mean.values[j];
    }
    out.push_back(std::move(d));
  }
  return out;
}

SyntheticTrajectory make_loop_trajectory(const MixtureSpec& spec,
                                         std::size_t n_places, int passes,
                                         double descriptor_noise,
                                         std::uint64_t seed,
                                         double gt_radius_m) {
  validate_spec(spec);
  if (n_places == 0) throw ConfigError("loop needs at least one place");
  if (passes < 1) throw ConfigError("loop needs at least one pass");
  if (!(descriptor_noise >= 0.0)) throw ConfigError("descriptor noise must be non-negative");
  if (!(gt_radius_m > 0.0)) throw ConfigError("ground-truth radius must be positive");

  // Adjacent places sit three radii apart along the ring, and the chord
  // length only grows with place separation, so distinct places can never
  // fall inside one ground-truth radius of each other.
  const double spacing = 3.0 * gt_radius_m;
  std::vector<Position> ring(n_places, Position{0.0, 0.0, 0.0});
  if (n_places > 1) {
    const double ring_radius =
        spacing / (2.0 * std::sin(std::numbers::pi / static_cast<double>(n_places)));
    for (std::size_t q = 0; q < n_places; ++q) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_places);
      ring[q] = Position{ring_radius * std::cos(angle), ring_radius * std::sin(angle), 0.0};
    }
  }

  const std::vector<Descriptor> bases = sample_mixture(spec, n_places, seed);
  const std::vector<bool> active = active_dims(spec);
  // Separate stream for revisit noise keeps the base descriptors independent
  // of the pass count.
  std::mt19937_64 noise_rng(seed + 0x9e3779b97f4a7c15ull);

  SyntheticTrajectory out;
  const std::size_t total = n_places * static_cast<std::size_t>(passes);
  out.trajectory.descriptors.reserve(total);
  out.trajectory.positions.reserve(total);
  for (int p = 0; p < passes; ++p) {
    for (std::size_t q = 0; q < n_places; ++q) {
      Descriptor d = bases[q];
      if (p > 0 && descriptor_noise > 0.0) {
        for (std::size_t j = 0; j < spec.dim; ++j) {
          if (active[j]) d.values[j] += descriptor_noise * gaussian(noise_rng);
        }
      }
      out.trajectory.descriptors.push_back(std::move(d));
      out.trajectory.positions.push_back(ring[q]);
    }
  }

  for (std::size_t q = 0; q < n_places; ++q) {
    for (int p1 = 0; p1 < passes; ++p1) {
      for (int p2 = p1 + 1; p2 < passes; ++p2) {
        out.revisit_pairs.emplace_back(
            static_cast<std::size_t>(p1) * n_places + q,
            static_cast<std::size_t>(p2) * n_places + q);
      }
    }
  }
  return out;
}

MixtureSpec make_random_mixture(std::size_t dim, int components, double spread,
                                double mean_range, std::uint64_t seed,
                                std::size_t mask_dims) {
  if (dim == 0) throw ConfigError("mixture dim must be positive");
  if (components < 1) throw ConfigError("mixture needs at least one component");
  if (!(spread >= 0.0)) throw ConfigError("spread must be non-negative");
  if (!(mean_range >= 0.0)) throw ConfigError("mean range must be non-negative");
  if (mask_dims > dim) throw ConfigError("mask dims exceed mixture dim");

  std::mt19937_64 rng(seed);
  MixtureSpec spec;
  spec.dim = dim;
  spec.components.resize(static_cast<std::size_t>(components));
  for (MixtureComponent& c : spec.components) {
    c.mean.values.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      c.mean.values[j] = mean_range * (2.0 * uniform_unit(rng) - 1.0);
    }
    c.spread = spread;
    c.weight = 1.0;
  }
  if (mask_dims > 0) {
    std::vector<std::size_t> mask(mask_dims);
    for (std::size_t j = 0; j < mask_dims; ++j) mask[j] = j;
    spec.subspace_mask = std::move(mask);
  }
  return spec;
}

}  // namespace dvpr
