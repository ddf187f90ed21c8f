#include "dvpr/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "dvpr/errors.hpp"

namespace dvpr {

PRCurve pr_curve(std::span<const QueryRecord> records) {
  std::size_t gt_total = 0;
  for (const auto& r : records) {
    if (r.has_gt_match) {
      ++gt_total;
    }
  }
  if (gt_total == 0) {
    throw UndefinedMetricError(
        "pr_curve: no query has a ground-truth match; recall is undefined");
  }

  // (nn distance, was it a true positive), for every record that matched.
  std::vector<std::pair<double, bool>> matches;
  matches.reserve(records.size());
  for (const auto& r : records) {
    if (r.nn_distance.has_value()) {
      matches.emplace_back(*r.nn_distance, r.is_true_positive);
    }
  }

  PRCurve curve;
  if (matches.empty()) {
    return curve;  // nothing was ever accepted at any threshold
  }

  std::vector<double> thresholds;
  thresholds.reserve(matches.size());
  for (const auto& m : matches) {
    thresholds.push_back(m.first);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  std::sort(matches.begin(), matches.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  curve.points.reserve(thresholds.size());
  std::size_t accepted = 0;
  std::size_t true_positives = 0;
  std::size_t next = 0;
  for (const double t : thresholds) {
    while (next < matches.size() && matches[next].first <= t) {
      ++accepted;
      if (matches[next].second) {
        ++true_positives;
      }
      ++next;
    }
    const double precision =
        accepted == 0 ? 1.0
                      : static_cast<double>(true_positives) /
                            static_cast<double>(accepted);
    const double recall = static_cast<double>(true_positives) /
                          static_cast<double>(gt_total);
    curve.points.push_back(PRPoint{t, precision, recall});
  }

  double auc = curve.points.front().recall * curve.points.front().precision;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    auc += (curve.points[i].recall - curve.points[i - 1].recall) *
           (curve.points[i].precision + curve.points[i - 1].precision) * 0.5;
  }
  curve.auc = auc;
  return curve;
}

double relative_auc(const PRCurve& decentralized, const PRCurve& centralized) {
  if (!(centralized.auc > 0.0)) {
    throw UndefinedMetricError(
        "relative_auc: centralized AUC is zero, the ratio is undefined");
  }
  return decentralized.auc / centralized.auc;
}

ConfusionMatrix::ConfusionMatrix(std::span<const QueryRecord> records,
                                 double threshold)
    : threshold_(threshold) {
  if (!std::isfinite(threshold)) {
    throw ConfigError("confusion_matrix: threshold must be finite");
  }
  globals_.reserve(records.size());
  for (const auto& r : records) {
    globals_.push_back(r.query.global_index);
  }
  std::sort(globals_.begin(), globals_.end());
  if (std::adjacent_find(globals_.begin(), globals_.end()) != globals_.end()) {
    throw DataError("confusion_matrix: duplicate query global index");
  }
  std::unordered_map<std::int64_t, std::size_t> rank_of;
  rank_of.reserve(globals_.size());
  for (std::size_t i = 0; i < globals_.size(); ++i) {
    rank_of.emplace(globals_[i], i);
  }

  match_col_.assign(globals_.size(), -1);
  match_dist_.assign(globals_.size(), std::numeric_limits<double>::infinity());
  for (const auto& r : records) {
    if (!r.match.has_value()) {
      continue;
    }
    const auto it = rank_of.find(r.match->global_index);
    if (it == rank_of.end()) {
      throw DataError("confusion_matrix: match refers to a frame outside the run");
    }
    const std::size_t row = rank_of.at(r.query.global_index);
    match_col_[row] = static_cast<std::ptrdiff_t>(it->second);
    match_dist_[row] = r.nn_distance.value();
  }
}

bool ConfusionMatrix::match_at(std::size_t query_rank,
                               std::size_t candidate_rank) const {
  return match_col_[query_rank] ==
             static_cast<std::ptrdiff_t>(candidate_rank) &&
         match_dist_[query_rank] <= threshold_;
}

double ConfusionMatrix::distance_at(std::size_t query_rank,
                                    std::size_t candidate_rank) const {
  if (match_col_[query_rank] == static_cast<std::ptrdiff_t>(candidate_rank)) {
    return match_dist_[query_rank];
  }
  return std::numeric_limits<double>::infinity();
}

std::optional<std::pair<std::size_t, double>> ConfusionMatrix::row_entry(
    std::size_t query_rank) const {
  if (match_col_[query_rank] < 0) {
    return std::nullopt;
  }
  return std::make_pair(static_cast<std::size_t>(match_col_[query_rank]),
                        match_dist_[query_rank]);
}

ConfusionMatrix confusion_matrix(std::span<const QueryRecord> records,
                                 double threshold) {
  return ConfusionMatrix(records, threshold);
}

SweepResult sweep(const Trajectory& deployment,
                  std::span<const Descriptor> training,
                  const SweepOptions& options) {
  if (options.n_values.empty()) {
    throw ConfigError("sweep: no robot counts given");
  }
  if (options.trials < 1) {
    throw ConfigError("sweep: trials must be at least 1");
  }
  if (deployment.descriptors.size() != deployment.positions.size()) {
    throw ConfigError("sweep: deployment descriptors and positions must align");
  }
  if (deployment.descriptors.empty()) {
    throw EmptyInputError("sweep: empty deployment trajectory");
  }
  if (training.empty()) {
    throw EmptyInputError("sweep: empty training set");
  }
  for (const int n : options.n_values) {
    if (n < 1) {
      throw ConfigError("sweep: robot counts must be at least 1");
    }
  }
  if (training.front().dim() != deployment.descriptors.front().dim()) {
    throw DimensionMismatchError(
        "sweep: training dimension disagrees with deployment dimension");
  }

  const std::size_t trials = static_cast<std::size_t>(options.trials);
  const std::size_t task_count = options.n_values.size() * trials;
  SweepResult result;
  result.rows.resize(task_count);

  const auto run_task = [&](std::size_t task) {
    const int n = options.n_values[task / trials];
    const int trial = static_cast<int>(task % trials);
    const std::uint64_t seed =
        options.base_seed + static_cast<std::uint64_t>(trial);

    const auto frames = split_trajectory(deployment.descriptors.size(), n);
    const ClusterModel model =
        train_kmeans(training, static_cast<std::size_t>(n), seed);
    const OwnershipMap ownership =
        OwnershipMap::modular(static_cast<std::size_t>(n), n);
    const SimulationInput input{deployment.descriptors, frames,
                                deployment.positions};

    SwarmConfig cfg;
    cfg.n = n;
    cfg.temporal_exclusion_window = options.temporal_exclusion_window;
    cfg.mode = SimMode::decentralized;
    const SimulationResult dec =
        run_simulation(input, model, ownership, cfg, options.gt_radius_m);
    cfg.mode = SimMode::centralized;
    const SimulationResult cen =
        run_simulation(input, model, ownership, cfg, options.gt_radius_m);

    SweepRow row;
    row.n = n;
    row.trial = trial;
    row.relative_auc = relative_auc(pr_curve(dec.records), pr_curve(cen.records));
    row.worst_balance_ratio = worst_balance_ratio(dec.ledger);
    result.rows[task] = row;
  };

  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, task_count));
  if (workers == 1) {
    for (std::size_t task = 0; task < task_count; ++task) {
      run_task(task);
    }
  } else {
    // Tasks are independent and land in pre-sized slots, so scheduling order
    // cannot change the result.
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t task = cursor.fetch_add(1);
          if (task >= task_count) {
            return;
          }
          try {
            run_task(task);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  result.means.reserve(options.n_values.size());
  for (std::size_t ni = 0; ni < options.n_values.size(); ++ni) {
    SweepMeanRow mean;
    mean.n = options.n_values[ni];
    for (std::size_t t = 0; t < trials; ++t) {
      const SweepRow& row = result.rows[ni * trials + t];
      mean.mean_relative_auc += row.relative_auc;
      mean.mean_worst_balance_ratio += row.worst_balance_ratio;
    }
    mean.mean_relative_auc /= static_cast<double>(trials);
    mean.mean_worst_balance_ratio /= static_cast<double>(trials);
    result.means.push_back(mean);
  }
  return result;
}

}  // namespace dvpr
