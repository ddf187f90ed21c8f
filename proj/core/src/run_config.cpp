#include "dvpr/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "dvpr/descriptor_file.hpp"
#include "dvpr/errors.hpp"
#include "dvpr/pose_file.hpp"

namespace dvpr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_with_from_chars(const std::string& key, const std::string& value) {
  T parsed{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, parsed);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("config key '" + key + "': bad value '" + value + "'");
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  return parse_with_from_chars<int>(key, value);
}

std::int64_t parse_int64(const std::string& key, const std::string& value) {
  return parse_with_from_chars<std::int64_t>(key, value);
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
  return parse_with_from_chars<std::uint64_t>(key, value);
}

double parse_real(const std::string& key, const std::string& value) {
  const double parsed = parse_with_from_chars<double>(key, value);
  if (!std::isfinite(parsed))
    throw ConfigError("config key '" + key + "': value must be finite");
  return parsed;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = parse_int(key, value);
  else if (key == "k") cfg.k = parse_int(key, value);
  else if (key == "seed") cfg.seed = parse_uint64(key, value);
  else if (key == "trials") cfg.trials = parse_int(key, value);
  else if (key == "temporal_exclusion_window") cfg.temporal_exclusion_window = parse_int64(key, value);
  else if (key == "gt_radius_m") cfg.gt_radius_m = parse_real(key, value);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "descriptor_path") cfg.descriptor_path = value;
  else if (key == "pose_path") cfg.pose_path = value;
  else if (key == "synthetic_places") cfg.synthetic_places = parse_int64(key, value);
  else if (key == "synthetic_passes") cfg.synthetic_passes = parse_int(key, value);
  else if (key == "synthetic_noise") cfg.synthetic_noise = parse_real(key, value);
  else if (key == "synthetic_seed") cfg.synthetic_seed = parse_uint64(key, value);
  else if (key == "synthetic_dim") cfg.synthetic_dim = parse_int64(key, value);
  else if (key == "synthetic_components") cfg.synthetic_components = parse_int(key, value);
  else if (key == "synthetic_mean_range") cfg.synthetic_mean_range = parse_real(key, value);
  else if (key == "synthetic_spread") cfg.synthetic_spread = parse_real(key, value);
  else if (key == "synthetic_mask_dims") cfg.synthetic_mask_dims = parse_int64(key, value);
  else if (key == "synthetic_component_seed") cfg.synthetic_component_seed = parse_uint64(key, value);
  else if (key == "training_descriptor_path") cfg.training_descriptor_path = value;
  else if (key == "training_count") cfg.training_count = parse_int64(key, value);
  else if (key == "training_seed") cfg.training_seed = parse_uint64(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  if (cfg.k < 0) throw ConfigError("k must be non-negative");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.temporal_exclusion_window < 0)
    throw ConfigError("temporal_exclusion_window must be non-negative");
  if (!(cfg.gt_radius_m > 0.0)) throw ConfigError("gt_radius_m must be positive");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (cfg.synthetic_places < 0) throw ConfigError("synthetic_places must be non-negative");
  if (cfg.training_count < 0) throw ConfigError("training_count must be non-negative");

  const bool file_deployment = !cfg.descriptor_path.empty() || !cfg.pose_path.empty();
  if (file_deployment && (cfg.descriptor_path.empty() || cfg.pose_path.empty()))
    throw ConfigError("descriptor_path and pose_path must be set together");
  const bool synthetic_deployment = cfg.synthetic_places > 0;
  if (file_deployment == synthetic_deployment)
    throw ConfigError(
        "choose one deployment source: descriptor_path+pose_path or synthetic_places");

  const bool file_training = !cfg.training_descriptor_path.empty();
  const bool sampled_training = cfg.training_count > 0;
  if (file_training == sampled_training)
    throw ConfigError(
        "choose one training source: training_descriptor_path or training_count");

  if (synthetic_deployment || sampled_training) {
    if (cfg.synthetic_dim < 1) throw ConfigError("synthetic_dim must be at least 1");
    if (cfg.synthetic_components < 1)
      throw ConfigError("synthetic_components must be at least 1");
    if (!(cfg.synthetic_mean_range >= 0.0))
      throw ConfigError("synthetic_mean_range must be non-negative");
    if (!(cfg.synthetic_spread >= 0.0))
      throw ConfigError("synthetic_spread must be non-negative");
    if (cfg.synthetic_mask_dims < 0 || cfg.synthetic_mask_dims > cfg.synthetic_dim)
      throw ConfigError("synthetic_mask_dims must lie in [0, synthetic_dim]");
  }
  if (synthetic_deployment) {
    if (cfg.synthetic_passes < 1) throw ConfigError("synthetic_passes must be at least 1");
    if (!(cfg.synthetic_noise >= 0.0))
      throw ConfigError("synthetic_noise must be non-negative");
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  RunConfig cfg;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty value for '" +
                        key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate config key '" + key + "'");
    apply_key(cfg, key, value);
  }
  if (in.bad()) throw ConfigError("read failed: " + path);

  validate(cfg);
  return cfg;
}

MixtureSpec config_mixture(const RunConfig& cfg, bool masked) {
  return make_random_mixture(
      static_cast<std::size_t>(cfg.synthetic_dim), cfg.synthetic_components,
      cfg.synthetic_spread, cfg.synthetic_mean_range, cfg.synthetic_component_seed,
      masked ? static_cast<std::size_t>(cfg.synthetic_mask_dims) : 0);
}

std::vector<Descriptor> build_training(const RunConfig& cfg) {
  if (!cfg.training_descriptor_path.empty())
    return read_descriptor_file(cfg.training_descriptor_path).descriptors;
  return sample_mixture(config_mixture(cfg, false),
                        static_cast<std::size_t>(cfg.training_count),
                        cfg.training_seed);
}

Trajectory build_deployment(const RunConfig& cfg) {
  if (!cfg.descriptor_path.empty()) {
    Trajectory t;
    t.descriptors = read_descriptor_file(cfg.descriptor_path).descriptors;
    t.positions = read_poses(cfg.pose_path);
    if (t.descriptors.size() != t.positions.size())
      throw DataError("descriptor count " + std::to_string(t.descriptors.size()) +
                      " does not match pose count " + std::to_string(t.positions.size()));
    return t;
  }
  return make_loop_trajectory(config_mixture(cfg, true),
                              static_cast<std::size_t>(cfg.synthetic_places),
                              cfg.synthetic_passes, cfg.synthetic_noise,
                              cfg.synthetic_seed, cfg.gt_radius_m)
      .trajectory;
}

}  // namespace dvpr
