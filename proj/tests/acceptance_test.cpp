// Acceptance gate: ten independently runnable criteria, one gtest case and
// one pass/fail line each. Tolerances are pinned next to the assertions.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dvpr/clustering.hpp"
#include "dvpr/datagen.hpp"
#include "dvpr/descriptor.hpp"
#include "dvpr/descriptor_file.hpp"
#include "dvpr/errors.hpp"
#include "dvpr/evaluation.hpp"
#include "dvpr/pose_file.hpp"
#include "dvpr/rng.hpp"
#include "dvpr/routing.hpp"
#include "dvpr/simulation.hpp"

using namespace dvpr;
namespace fs = std::filesystem;

namespace {

// Shared dataset for the two sweep criteria: a two-pass loop over 1000
// places (2000 frames) drawn from a 32-dim four-component mixture, with a
// 4000-sample training set from the same mixture. The shifted variant masks
// deployment sampling to the first two dimensions while training stays on
// the full mixture, which is the modeled distribution shift.
struct SweepDataset {
  SyntheticTrajectory deployment;
  std::vector<Descriptor> training;
};

SweepDataset make_sweep_dataset(bool shifted) {
  constexpr std::size_t kDim = 32;
  constexpr int kComponents = 4;
  constexpr double kSpread = 1.0;
  constexpr double kMeanRange = 2.0;
  constexpr std::uint64_t kComponentSeed = 101;

  const MixtureSpec deploy_spec = make_random_mixture(
      kDim, kComponents, kSpread, kMeanRange, kComponentSeed, shifted ? 2 : 0);
  const MixtureSpec train_spec =
      make_random_mixture(kDim, kComponents, kSpread, kMeanRange, kComponentSeed);

  SweepDataset data;
  data.deployment = make_loop_trajectory(deploy_spec, 1000, 2, 0.3, 102);
  data.training = sample_mixture(train_spec, 4000, 103);
  return data;
}

SweepResult run_acceptance_sweep(const SweepDataset& data) {
  SweepOptions options;
  options.n_values = {2, 5, 10, 20};
  options.trials = 10;
  options.base_seed = 7;
  return sweep(data.deployment.trajectory, data.training, options);
}

// Criterion 1: per-query payload at d=128 with 4-byte values is exactly 512
// bytes, and the broadcast baseline is exactly n unicast payloads for every
// swarm size up to 20.
TEST(Acceptance, C01BandwidthArithmetic) {
  EXPECT_EQ(query_bytes(128, 4), 512u);
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(broadcast_bytes_baseline(128, 4, n) % query_bytes(128, 4), 0u);
    EXPECT_EQ(broadcast_bytes_baseline(128, 4, n) / query_bytes(128, 4),
              static_cast<std::uint64_t>(n));
  }
}

// Criterion 2: with a single robot, the decentralized run and the
// centralized baseline agree on every record outcome (bytes_sent excepted;
// routed_robot is 0 versus the defined centralized sentinel -1), so the
// relative AUC is exactly 1.0.
TEST(Acceptance, C02SingleRobotEquivalence) {
  const MixtureSpec spec = make_random_mixture(16, 4, 1.0, 2.0, 31);
  const SyntheticTrajectory synth = make_loop_trajectory(spec, 250, 2, 0.2, 32);
  ASSERT_EQ(synth.trajectory.descriptors.size(), 500u);
  const auto frames = split_trajectory(500, 1);
  const auto training = sample_mixture(spec, 600, 33);
  const ClusterModel model = train_kmeans(training, 4, 5);
  const OwnershipMap ownership = OwnershipMap::modular(4, 1);
  const SimulationInput input{synth.trajectory.descriptors, frames,
                              synth.trajectory.positions};

  SwarmConfig cfg;
  cfg.n = 1;
  cfg.mode = SimMode::decentralized;
  const SimulationResult dec = run_simulation(input, model, ownership, cfg, 10.0);
  cfg.mode = SimMode::centralized;
  const SimulationResult cen = run_simulation(input, model, ownership, cfg, 10.0);

  ASSERT_EQ(dec.records.size(), cen.records.size());
  for (std::size_t i = 0; i < dec.records.size(); ++i) {
    const QueryRecord& d = dec.records[i];
    const QueryRecord& c = cen.records[i];
    ASSERT_EQ(d.query, c.query);
    ASSERT_EQ(d.match, c.match);
    ASSERT_EQ(d.nn_distance, c.nn_distance);
    ASSERT_EQ(d.has_gt_match, c.has_gt_match);
    ASSERT_EQ(d.is_true_positive, c.is_true_positive);
    ASSERT_EQ(d.routed_robot, 0);
    ASSERT_EQ(c.routed_robot, -1);
  }
  EXPECT_EQ(relative_auc(pr_curve(dec.records), pr_curve(cen.records)), 1.0);
}

// Criterion 3: nearest_neighbor against an independent exhaustive oracle on
// 100 random 16-dim descriptors; identical FrameId, distance within 1e-9.
TEST(Acceptance, C03RetrievalOracle) {
  constexpr double kDistanceTol = 1e-9;
  std::mt19937_64 rng(404);
  const std::size_t dim = 16;
  std::vector<Descriptor> pool(100);
  DescriptorStore store;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].values.resize(dim);
    for (double& v : pool[i].values) v = 10.0 * (2.0 * uniform_unit(rng) - 1.0);
    store.insert({static_cast<int>(i % 7), static_cast<std::int64_t>(i),
                  static_cast<std::int64_t>(i)},
                 pool[i]);
  }

  for (int q = 0; q < 100; ++q) {
    Descriptor query;
    query.values.resize(dim);
    for (double& v : query.values) v = 10.0 * (2.0 * uniform_unit(rng) - 1.0);

    // Independent double-loop oracle with its own accumulation.
    std::int64_t best_global = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        acc += (query.values[j] - pool[i].values[j]) *
               (query.values[j] - pool[i].values[j]);
      }
      const double dist = std::sqrt(acc);
      if (dist < best_dist ||
          (dist == best_dist && static_cast<std::int64_t>(i) < best_global)) {
        best_dist = dist;
        best_global = static_cast<std::int64_t>(i);
      }
    }

    const auto hit = nearest_neighbor(query, store);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->id.global_index, best_global);
    EXPECT_NEAR(hit->distance, best_dist, kDistanceTol);
  }
}

// Criterion 4: on the separated 12-point k=3 instance, best-of-10-seed
// training reaches the exhaustively enumerated optimal SSE within 1e-9
// relative; Lloyd fixed-point, non-empty-cluster and recomputed-SSE
// invariants hold across 100 random instances.
TEST(Acceptance, C04KMeansOracle) {
  constexpr double kRelTol = 1e-9;

  std::vector<Descriptor> points;
  const double cx[3] = {0.0, 10.0, 0.0};
  const double cy[3] = {0.0, 0.0, 10.0};
  for (int g = 0; g < 3; ++g) {
    for (double sx : {-0.5, 0.5}) {
      for (double sy : {-0.5, 0.5}) {
        points.push_back(Descriptor{{cx[g] + sx, cy[g] + sy}});
      }
    }
  }

  // Exhaustive optimum over all 3^12 assignments.
  double optimum = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> labels(points.size(), 0);
  while (true) {
    std::vector<std::vector<double>> sums(3, std::vector<double>(2, 0.0));
    std::vector<std::size_t> counts(3, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[labels[i]][0] += points[i].values[0];
      sums[labels[i]][1] += points[i].values[1];
      ++counts[labels[i]];
    }
    double candidate = 0.0;
    bool surjective = true;
    for (std::size_t c = 0; c < 3 && surjective; ++c) surjective = counts[c] > 0;
    if (surjective) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double dx =
            points[i].values[0] - sums[labels[i]][0] / counts[labels[i]];
        const double dy =
            points[i].values[1] - sums[labels[i]][1] / counts[labels[i]];
        candidate += dx * dx + dy * dy;
      }
      optimum = std::min(optimum, candidate);
    }
    std::size_t pos = 0;
    while (pos < labels.size() && ++labels[pos] == 3) labels[pos++] = 0;
    if (pos == labels.size()) break;
  }

  double best_sse = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    best_sse =
        std::min(best_sse, train_kmeans(points, 3, seed).training_meta.final_sse);
  }
  EXPECT_NEAR(best_sse, optimum, kRelTol * optimum);

  std::mt19937_64 rng(505);
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t count = 8 + uniform_below(rng, 23);
    const std::size_t dim = 1 + uniform_below(rng, 5);
    const std::size_t k = 1 + uniform_below(rng, std::min<std::uint64_t>(6, count));
    std::vector<Descriptor> pts(count);
    for (Descriptor& p : pts) {
      p.values.resize(dim);
      for (double& v : p.values) v = 5.0 * (2.0 * uniform_unit(rng) - 1.0);
    }

    const ClusterModel model =
        train_kmeans(pts, k, static_cast<std::uint64_t>(instance), 500, 0.0);
    ASSERT_EQ(model.k(), k);
    EXPECT_EQ(model.training_meta.final_sse, sse(model, pts));

    // Fixed point: one more Lloyd step reproduces the centroids bit for
    // bit, and no cluster is empty. Means accumulate in ascending point
    // order like the trainer.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (const Descriptor& p : pts) {
      const std::size_t c = assign_cluster(model, p);
      for (std::size_t j = 0; j < dim; ++j) sums[c][j] += p.values[j];
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      ASSERT_GT(counts[c], 0u) << "instance " << instance;
      for (std::size_t j = 0; j < dim; ++j) {
        ASSERT_EQ(sums[c][j] / static_cast<double>(counts[c]),
                  model.centroids[c].values[j])
            << "instance " << instance;
      }
    }
  }
}

// Criterion 5: the hand-enumerated six-record PR oracle (rectangle 1/6 plus
// trapezoids 1/6 and 17/144, total 65/144), then recall monotonicity,
// auc in [0,1] and permutation invariance over 1000 random record sets.
TEST(Acceptance, C05PrCurveOracle) {
  constexpr double kAucTol = 1e-12;

  const auto make_record = [](std::int64_t g, double dist, bool tp, bool gt) {
    QueryRecord r;
    r.query = FrameId{0, g, g};
    if (dist >= 0.0) {
      r.match = FrameId{0, 0, 0};
      r.nn_distance = dist;
    }
    r.is_true_positive = tp;
    r.has_gt_match = gt;
    return r;
  };

  const std::vector<QueryRecord> oracle = {
      make_record(0, 0.1, true, true),  make_record(1, 0.2, true, true),
      make_record(2, 0.3, false, true), make_record(3, 0.4, true, true),
      make_record(4, 0.5, false, true), make_record(5, 0.6, false, true)};
  const PRCurve curve = pr_curve(oracle);
  ASSERT_EQ(curve.points.size(), 6u);
  const double expected_p[6] = {1.0, 1.0, 2.0 / 3.0, 3.0 / 4.0, 3.0 / 5.0, 0.5};
  const double expected_r[6] = {1.0 / 6.0, 2.0 / 6.0, 2.0 / 6.0,
                                3.0 / 6.0, 3.0 / 6.0, 3.0 / 6.0};
  for (int i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(curve.points[i].precision, expected_p[i]);
    EXPECT_DOUBLE_EQ(curve.points[i].recall, expected_r[i]);
  }
  EXPECT_NEAR(curve.auc, 65.0 / 144.0, kAucTol);

  std::mt19937_64 rng(606);
  int evaluated = 0;
  while (evaluated < 1000) {
    std::vector<QueryRecord> records;
    const std::size_t count = 5 + uniform_below(rng, 30);
    bool any_gt = false;
    for (std::size_t i = 0; i < count; ++i) {
      const bool has_match = uniform_unit(rng) < 0.8;
      const bool tp = has_match && uniform_unit(rng) < 0.5;
      const bool gt = tp || uniform_unit(rng) < 0.4;
      records.push_back(make_record(static_cast<std::int64_t>(i),
                                    has_match ? uniform_unit(rng) : -1.0, tp, gt));
      any_gt = any_gt || gt;
    }
    if (!any_gt) continue;
    ++evaluated;

    const PRCurve c = pr_curve(records);
    ASSERT_GE(c.auc, 0.0);
    ASSERT_LE(c.auc, 1.0 + kAucTol);
    for (std::size_t i = 1; i < c.points.size(); ++i)
      ASSERT_LE(c.points[i - 1].recall, c.points[i].recall);

    std::vector<QueryRecord> shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const PRCurve again = pr_curve(shuffled);
    ASSERT_EQ(again.auc, c.auc);
    ASSERT_EQ(again.points.size(), c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      ASSERT_EQ(again.points[i].precision, c.points[i].precision);
      ASSERT_EQ(again.points[i].recall, c.points[i].recall);
    }
  }
}

// Criterion 6: the ratio stays inside [1, n] on generated ledgers, and one
// robot of twenty holding half of 100 queries scores exactly 10.0.
TEST(Acceptance, C06WorstBalanceRatio) {
  BandwidthLedger anchor(20);
  for (int i = 0; i < 50; ++i) anchor.record_unicast(0, 512);
  for (int r = 1; r <= 10; ++r) {
    for (int i = 0; i < 5; ++i) anchor.record_unicast(r, 512);
  }
  ASSERT_EQ(anchor.total_queries(), 100u);
  EXPECT_EQ(worst_balance_ratio(anchor), 10.0);

  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 20));
    BandwidthLedger ledger(n);
    const int queries = 1 + static_cast<int>(uniform_below(rng, 400));
    for (int q = 0; q < queries; ++q) {
      if (uniform_unit(rng) < 0.2) {
        ledger.record_broadcast(512);
      } else {
        ledger.record_unicast(
            static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))),
            512);
      }
    }
    const double ratio = worst_balance_ratio(ledger);
    ASSERT_GE(ratio, 1.0);
    ASSERT_LE(ratio, static_cast<double>(n));
  }
}

// Criterion 7: recall trend on the shift-free sweep (n in {2,5,10,20},
// 10 trials, 2000-frame loop): every mean relative AUC is at most 1.0 and
// the n=20 mean lies strictly below the n=2 mean. Ordering only.
TEST(Acceptance, C07RecallDegradesWithSwarmSize) {
  const SweepDataset data = make_sweep_dataset(false);
  const SweepResult result = run_acceptance_sweep(data);
  ASSERT_EQ(result.means.size(), 4u);
  for (const SweepMeanRow& row : result.means) {
    EXPECT_LE(row.mean_relative_auc, 1.0) << "n = " << row.n;
  }
  EXPECT_LT(result.means[3].mean_relative_auc, result.means[0].mean_relative_auc);
}

// Criterion 8: under deployment distribution shift (masked subspace), the
// mean worst balance ratio at n=10 reaches at least 2.0 and exceeds the
// shift-free sweep's value at n=10.
TEST(Acceptance, C08ShiftIncreasesImbalance) {
  const SweepResult baseline = run_acceptance_sweep(make_sweep_dataset(false));
  const SweepResult shifted = run_acceptance_sweep(make_sweep_dataset(true));
  ASSERT_EQ(baseline.means[2].n, 10);
  ASSERT_EQ(shifted.means[2].n, 10);
  EXPECT_GE(shifted.means[2].mean_worst_balance_ratio, 2.0);
  EXPECT_GT(shifted.means[2].mean_worst_balance_ratio,
            baseline.means[2].mean_worst_balance_ratio);
}

// Criterion 9: the sweep tool is reproducible; two runs with the same
// config write byte-identical CSV reports.
TEST(Acceptance, C09SweepToolIsDeterministic) {
  const fs::path dir = fs::temp_directory_path() / "dvpr_acceptance_c09";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto read_file = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "n = 1\nseed = 5\n"
        << "synthetic_places = 100\nsynthetic_passes = 2\n"
        << "synthetic_noise = 0.3\nsynthetic_dim = 8\n"
        << "synthetic_components = 3\ntraining_count = 300\n"
        << "output_dir = " << (dir / "out").string() << "\n";
  }
  const std::string cmd = std::string(DVPR_CLI_PATH) + " sweep --config " +
                          (dir / "run.cfg").string() +
                          " --n-min 1 --n-max 4 --trials 3 > " +
                          (dir / "stdout.txt").string() + " 2>&1";

  int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0) << read_file(dir / "stdout.txt");
  const std::string sweep_first = read_file(dir / "out/sweep.csv");
  const std::string means_first = read_file(dir / "out/sweep_means.csv");
  ASSERT_FALSE(sweep_first.empty());

  status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0);
  EXPECT_EQ(read_file(dir / "out/sweep.csv"), sweep_first);
  EXPECT_EQ(read_file(dir / "out/sweep_means.csv"), means_first);
  fs::remove_all(dir);
}

// Criterion 10: descriptor files round-trip bit-losslessly, corrupt files
// raise the declared error classes, and pose lines yield the translation
// at token indices 3, 7 and 11 under the strict 12-token rule.
TEST(Acceptance, C10FileFormatRoundTrips) {
  const fs::path dir = fs::temp_directory_path() / "dvpr_acceptance_c10";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::mt19937_64 rng(808);
  std::vector<Descriptor> original(23);
  for (Descriptor& d : original) {
    d.values.resize(9);
    for (double& v : d.values)
      v = static_cast<double>(static_cast<float>(8.0 * (2.0 * uniform_unit(rng) - 1.0)));
  }
  const std::string file = (dir / "d.dvpr").string();
  write_descriptor_file(file, original, 9);
  const DescriptorFileContents back = read_descriptor_file(file);
  ASSERT_EQ(back.dim, 9u);
  ASSERT_EQ(back.descriptors.size(), original.size());
  for (std::size_t i = 0; i < original.size(); ++i)
    EXPECT_EQ(back.descriptors[i], original[i]);

  std::vector<unsigned char> bytes;
  {
    std::ifstream in(file, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in),
                 std::istreambuf_iterator<char>());
  }
  const auto write_raw = [&dir](const std::string& name,
                                const std::vector<unsigned char>& content) {
    std::ofstream out(dir / name, std::ios::binary);
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
    return (dir / name).string();
  };

  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(read_descriptor_file(write_raw("t.dvpr", truncated)),
               TruncationError);
  auto bad_magic = bytes;
  bad_magic[1] = 'X';
  EXPECT_THROW(read_descriptor_file(write_raw("m.dvpr", bad_magic)), FormatError);

  {
    std::ofstream poses(dir / "poses.txt");
    poses << "1 0 0 -3.5 0 1 0 4.25 0 0 1 900\n";
    poses << "0 0 0 0 0 0 0 0 0 0 0 0\n";
  }
  const auto positions = read_poses((dir / "poses.txt").string());
  ASSERT_EQ(positions.size(), 2u);
  EXPECT_EQ(positions[0], (Position{-3.5, 4.25, 900.0}));
  EXPECT_EQ(positions[1], (Position{0.0, 0.0, 0.0}));

  {
    std::ofstream poses(dir / "bad.txt");
    poses << "1 0 0 -3.5 0 1 0 4.25 0 0 1\n";
  }
  EXPECT_THROW(read_poses((dir / "bad.txt").string()), FormatError);
  fs::remove_all(dir);
}

}  // namespace
