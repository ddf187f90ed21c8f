// Command-line front end: cluster training, swarm simulation, sweeps and
// report generation over descriptor/pose files or synthetic data.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dvpr/clustering.hpp"
#include "dvpr/csv.hpp"
#include "dvpr/datagen.hpp"
#include "dvpr/descriptor_file.hpp"
#include "dvpr/errors.hpp"
#include "dvpr/evaluation.hpp"
#include "dvpr/pose_file.hpp"
#include "dvpr/reports.hpp"
#include "dvpr/routing.hpp"
#include "dvpr/run_config.hpp"
#include "dvpr/simulation.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kWirePrecisionBytes = 4;

struct Pipeline {
  std::vector<dvpr::Descriptor> training;
  dvpr::Trajectory deployment;
  std::vector<dvpr::FrameId> frames;
  dvpr::ClusterModel model;
  dvpr::OwnershipMap ownership;
};

Pipeline build_pipeline(const dvpr::RunConfig& cfg) {
  Pipeline p;
  p.training = dvpr::build_training(cfg);
  p.deployment = dvpr::build_deployment(cfg);
  p.frames = dvpr::split_trajectory(p.deployment.descriptors.size(), cfg.n);
  p.model = dvpr::train_kmeans(p.training,
                               static_cast<std::size_t>(cfg.effective_k()),
                               cfg.seed);
  p.ownership = dvpr::OwnershipMap::modular(p.model.k(), cfg.n);
  return p;
}

dvpr::SimulationResult run_mode(const Pipeline& p, const dvpr::RunConfig& cfg,
                                dvpr::SimMode mode) {
  const dvpr::SimulationInput input{p.deployment.descriptors, p.frames,
                                    p.deployment.positions};
  dvpr::SwarmConfig swarm;
  swarm.n = cfg.n;
  swarm.temporal_exclusion_window = cfg.temporal_exclusion_window;
  swarm.mode = mode;
  return dvpr::run_simulation(input, p.model, p.ownership, swarm,
                              cfg.gt_radius_m);
}

fs::path ensure_output_dir(const std::string& dir) {
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

int cmd_train_clusters(const std::string& config_path, std::string out_path) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(config_path);
  const std::vector<dvpr::Descriptor> training = dvpr::build_training(cfg);
  const dvpr::ClusterModel model = dvpr::train_kmeans(
      training, static_cast<std::size_t>(cfg.effective_k()), cfg.seed);
  if (out_path.empty())
    out_path = (ensure_output_dir(cfg.output_dir) / "centroids.dvpr").string();
  dvpr::write_descriptor_file(out_path, model.centroids, model.dim());
  std::cout << "k=" << model.k() << " dim=" << model.dim()
            << " iterations=" << model.training_meta.iterations_run
            << " sse=" << dvpr::format_real(model.training_meta.final_sse)
            << " out=" << out_path << '\n';
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(config_path);
  const Pipeline p = build_pipeline(cfg);
  const dvpr::SimulationResult dec = run_mode(p, cfg, dvpr::SimMode::decentralized);
  const dvpr::SimulationResult cen = run_mode(p, cfg, dvpr::SimMode::centralized);

  const dvpr::PRCurve pr_dec = dvpr::pr_curve(dec.records);
  const dvpr::PRCurve pr_cen = dvpr::pr_curve(cen.records);

  dvpr::RunSummary summary;
  summary.n = cfg.n;
  summary.k = cfg.effective_k();
  summary.seed = cfg.seed;
  summary.dim = p.model.dim();
  summary.frames = p.deployment.descriptors.size();
  summary.auc_centralized = pr_cen.auc;
  summary.auc_decentralized = pr_dec.auc;
  summary.relative_auc = dvpr::relative_auc(pr_dec, pr_cen);
  summary.worst_balance_ratio = dvpr::worst_balance_ratio(dec.ledger);
  summary.bytes_per_query_decentralized =
      dvpr::query_bytes(p.model.dim(), kWirePrecisionBytes);
  summary.bytes_decentralized_total = dec.ledger.total_bytes();
  summary.bytes_broadcast_baseline_total = cen.ledger.total_bytes();

  const fs::path out = ensure_output_dir(cfg.output_dir);
  dvpr::write_records_csv((out / "records_decentralized.csv").string(), dec.records);
  dvpr::write_records_csv((out / "records_centralized.csv").string(), cen.records);
  dvpr::write_pr_csv((out / "pr_decentralized.csv").string(), pr_dec);
  dvpr::write_pr_csv((out / "pr_centralized.csv").string(), pr_cen);
  dvpr::write_summary_json((out / "summary.json").string(), summary);

  std::cout << "frames=" << summary.frames << " n=" << summary.n
            << " k=" << summary.k
            << " relative_auc=" << dvpr::format_real(summary.relative_auc)
            << " worst_balance_ratio="
            << dvpr::format_real(summary.worst_balance_ratio)
            << " bytes=" << summary.bytes_decentralized_total << '/'
            << summary.bytes_broadcast_baseline_total << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, int n_min, int n_max, int trials) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(config_path);
  if (n_min < 1 || n_max < n_min)
    throw dvpr::ConfigError("sweep needs 1 <= n-min <= n-max");

  const std::vector<dvpr::Descriptor> training = dvpr::build_training(cfg);
  const dvpr::Trajectory deployment = dvpr::build_deployment(cfg);

  dvpr::SweepOptions options;
  for (int n = n_min; n <= n_max; ++n) options.n_values.push_back(n);
  options.trials = trials > 0 ? trials : cfg.trials;
  options.base_seed = cfg.seed;
  options.temporal_exclusion_window = cfg.temporal_exclusion_window;
  options.gt_radius_m = cfg.gt_radius_m;
  const dvpr::SweepResult result = dvpr::sweep(deployment, training, options);

  const fs::path out = ensure_output_dir(cfg.output_dir);
  dvpr::write_sweep_csv((out / "sweep.csv").string(), result.rows);
  dvpr::write_sweep_mean_csv((out / "sweep_means.csv").string(), result.means);
  for (const dvpr::SweepMeanRow& row : result.means) {
    std::cout << "n=" << row.n << " mean_relative_auc="
              << dvpr::format_real(row.mean_relative_auc)
              << " mean_worst_balance_ratio="
              << dvpr::format_real(row.mean_worst_balance_ratio) << '\n';
  }
  return 0;
}

int cmd_confusion(const std::string& config_path, double threshold) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(config_path);
  const Pipeline p = build_pipeline(cfg);
  const dvpr::SimulationResult dec = run_mode(p, cfg, dvpr::SimMode::decentralized);
  const dvpr::SimulationResult cen = run_mode(p, cfg, dvpr::SimMode::centralized);

  const fs::path out = ensure_output_dir(cfg.output_dir);
  const dvpr::ConfusionMatrix m_dec = dvpr::confusion_matrix(dec.records, threshold);
  const dvpr::ConfusionMatrix m_cen = dvpr::confusion_matrix(cen.records, threshold);
  dvpr::write_confusion_match_csv(
      (out / "confusion_match_decentralized.csv").string(), m_dec);
  dvpr::write_confusion_distance_csv(
      (out / "confusion_distance_decentralized.csv").string(), m_dec);
  dvpr::write_confusion_match_csv(
      (out / "confusion_match_centralized.csv").string(), m_cen);
  dvpr::write_confusion_distance_csv(
      (out / "confusion_distance_centralized.csv").string(), m_cen);
  std::cout << "queries=" << m_dec.query_count()
            << " threshold=" << dvpr::format_real(threshold) << '\n';
  return 0;
}

int cmd_feature_scatter(const std::string& config_path) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(config_path);
  const std::vector<dvpr::Descriptor> training = dvpr::build_training(cfg);
  const dvpr::Trajectory deployment = dvpr::build_deployment(cfg);
  const fs::path out = ensure_output_dir(cfg.output_dir);
  dvpr::write_scatter_csv((out / "scatter.csv").string(), training,
                          deployment.descriptors);
  std::cout << "training=" << training.size()
            << " deployment=" << deployment.descriptors.size() << '\n';
  return 0;
}

int cmd_gen_data(const std::string& spec_path, const std::string& out_dir) {
  const dvpr::RunConfig cfg = dvpr::load_run_config(spec_path);
  if (cfg.synthetic_places <= 0)
    throw dvpr::ConfigError("gen-data needs a synthetic deployment (synthetic_places)");
  if (cfg.training_count <= 0)
    throw dvpr::ConfigError("gen-data needs sampled training data (training_count)");

  const dvpr::Trajectory deployment = dvpr::build_deployment(cfg);
  const std::vector<dvpr::Descriptor> training = dvpr::build_training(cfg);
  const std::size_t dim = static_cast<std::size_t>(cfg.synthetic_dim);

  const fs::path out = ensure_output_dir(out_dir);
  dvpr::write_descriptor_file((out / "deployment.dvpr").string(),
                              deployment.descriptors, dim);
  dvpr::write_poses((out / "poses.txt").string(), deployment.positions);
  dvpr::write_descriptor_file((out / "training.dvpr").string(), training, dim);
  std::cout << "frames=" << deployment.descriptors.size()
            << " training=" << training.size() << " dim=" << dim
            << " out=" << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cluster-routed place recognition over robot swarms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string spec_path;
  std::string out_dir;
  int n_min = 0;
  int n_max = 0;
  int trials = 0;
  double threshold = 0.0;

  CLI::App* train = app.add_subcommand(
      "train-clusters", "train the k-means model and write its centroids");
  train->add_option("--config", config_path, "run config file")->required();
  train->add_option("--out", out_path, "centroid output path");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run decentralized and centralized passes, write reports");
  simulate->add_option("--config", config_path, "run config file")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "repeat the run over a swarm-size range with k = n");
  sweep->add_option("--config", config_path, "run config file")->required();
  sweep->add_option("--n-min", n_min, "smallest swarm size")->required();
  sweep->add_option("--n-max", n_max, "largest swarm size")->required();
  sweep->add_option("--trials", trials, "trials per swarm size (default: config)");

  CLI::App* confusion = app.add_subcommand(
      "confusion", "write thresholded match and distance matrices");
  confusion->add_option("--config", config_path, "run config file")->required();
  confusion->add_option("--threshold", threshold, "match distance threshold")
      ->required();

  CLI::App* scatter = app.add_subcommand(
      "feature-scatter", "write the first two descriptor dimensions per set");
  scatter->add_option("--config", config_path, "run config file")->required();

  CLI::App* gen = app.add_subcommand(
      "gen-data", "write synthetic descriptor, pose and training files");
  gen->add_option("--spec", spec_path, "generation config file")->required();
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train_clusters(config_path, out_path);
    if (simulate->parsed()) return cmd_simulate(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path, n_min, n_max, trials);
    if (confusion->parsed()) return cmd_confusion(config_path, threshold);
    if (scatter->parsed()) return cmd_feature_scatter(config_path);
    if (gen->parsed()) return cmd_gen_data(spec_path, out_dir);
  } catch (const dvpr::Error& e) {
    std::cerr << "dvpr: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dvpr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
