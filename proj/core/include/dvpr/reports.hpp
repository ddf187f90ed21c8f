#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "dvpr/descriptor.hpp"
#include "dvpr/evaluation.hpp"
#include "dvpr/simulation.hpp"

namespace dvpr {

// CSV and JSON report writers. All real numbers go through format_real, so
// equal inputs produce byte-identical files on any platform or locale.

// Columns: query_robot,query_local_index,query_global_index,routed_robot,
// match_robot,match_local_index,match_global_index,nn_distance,has_gt_match,
// is_true_positive,bytes_sent. Match fields are empty when the store had no
// candidate; routed_robot is empty for broadcast queries; booleans are 0/1.
void write_records_csv(const std::string& path,
                       std::span<const QueryRecord> records);

// Columns: threshold,precision,recall.
void write_pr_csv(const std::string& path, const PRCurve& curve);

// Columns: n,trial,relative_auc,worst_balance_ratio.
void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows);

// Columns: n,mean_relative_auc,mean_worst_balance_ratio.
void write_sweep_mean_csv(const std::string& path,
                          std::span<const SweepMeanRow> means);

// Dense 0/1 matrix; first column holds the query global index, remaining
// column headers are the candidate global indices.
void write_confusion_match_csv(const std::string& path,
                               const ConfusionMatrix& matrix);

// Same layout with nn-distances; pairs that were not the returned match are
// written as "inf".
void write_confusion_distance_csv(const std::string& path,
                                  const ConfusionMatrix& matrix);

// Columns: set,dim0,dim1 with set in {training, deployment}. Needs dim >= 2.
void write_scatter_csv(const std::string& path,
                       std::span<const Descriptor> training,
                       std::span<const Descriptor> deployment);

struct RunSummary {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t frames = 0;
  double auc_centralized = 0.0;
  double auc_decentralized = 0.0;
  double relative_auc = 0.0;
  double worst_balance_ratio = 0.0;
  std::uint64_t bytes_per_query_decentralized = 0;
  std::uint64_t bytes_decentralized_total = 0;
  std::uint64_t bytes_broadcast_baseline_total = 0;
};

// One JSON object, keys in sorted order, two-space indent.
void write_summary_json(const std::string& path, const RunSummary& summary);

}  // namespace dvpr
