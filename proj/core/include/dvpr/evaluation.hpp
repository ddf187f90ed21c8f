#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dvpr/simulation.hpp"

namespace dvpr {

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Precision-recall swept at every observed nearest-neighbor distance, in
// ascending threshold order (recall is therefore non-decreasing). auc is the
// trapezoidal integral of precision over recall plus the leading rectangle
// from recall zero to the first point at its precision.
struct PRCurve {
  std::vector<PRPoint> points;
  double auc = 0.0;
};

// Requires at least one record with has_gt_match; if no record carries a
// match at all the curve is empty with auc 0.
PRCurve pr_curve(std::span<const QueryRecord> records);

// decentralized.auc / centralized.auc; undefined when the reference is 0.
double relative_auc(const PRCurve& decentralized, const PRCurve& centralized);

// Boolean match matrix at a fixed distance threshold plus the nn-distance
// matrix it was thresholded from. Rows are queries and columns candidates,
// both ordered by global_index; match_at(i, j) holds exactly when frame j
// was the returned match of query i and its nn-distance is within the
// threshold. Rows hold at most one finite distance, so storage is sparse.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::span<const QueryRecord> records, double threshold);

  std::size_t query_count() const { return globals_.size(); }
  std::size_t candidate_count() const { return globals_.size(); }
  double threshold() const { return threshold_; }

  bool match_at(std::size_t query_rank, std::size_t candidate_rank) const;
  // +infinity where the pair was not the returned match.
  double distance_at(std::size_t query_rank, std::size_t candidate_rank) const;

  std::int64_t global_index_of(std::size_t rank) const { return globals_[rank]; }
  // The row's single finite entry: (candidate rank, distance), if any.
  std::optional<std::pair<std::size_t, double>> row_entry(std::size_t query_rank) const;

 private:
  double threshold_ = 0.0;
  std::vector<std::int64_t> globals_;     // sorted query global indices
  std::vector<std::ptrdiff_t> match_col_; // -1 when the query had no match
  std::vector<double> match_dist_;
};

ConfusionMatrix confusion_matrix(std::span<const QueryRecord> records,
                                 double threshold);

struct SweepRow {
  int n = 0;
  int trial = 0;
  double relative_auc = 0.0;
  double worst_balance_ratio = 0.0;
};

struct SweepMeanRow {
  int n = 0;
  double mean_relative_auc = 0.0;
  double mean_worst_balance_ratio = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;       // (n, trial) order
  std::vector<SweepMeanRow> means;  // one per n, same n order as rows
};

struct SweepOptions {
  std::vector<int> n_values;
  int trials = 10;
  std::uint64_t base_seed = 0;
  std::int64_t temporal_exclusion_window = 50;
  double gt_radius_m = 10.0;
  unsigned threads = 0;  // 0 picks hardware_concurrency
};

// For every n and trial t: splits the trajectory over n robots, trains
// k-means with k = n and seed = base_seed + t on the training set, runs the
// decentralized and the centralized simulation, and records relative AUC and
// worst balance ratio. Trials may run on a worker pool; rows always come
// back in (n, trial) order, so results are deterministic either way.
SweepResult sweep(const Trajectory& deployment,
                  std::span<const Descriptor> training,
                  const SweepOptions& options);

}  // namespace dvpr
