#include "dvpr/reports.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dvpr/csv.hpp"
#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open output file: " + path);
  out << body;
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace

void write_records_csv(const std::string& path,
                       std::span<const QueryRecord> records) {
  std::ostringstream out;
  out << "query_robot,query_local_index,query_global_index,routed_robot,"
         "match_robot,match_local_index,match_global_index,nn_distance,"
         "has_gt_match,is_true_positive,bytes_sent\n";
  for (const QueryRecord& r : records) {
    out << r.query.robot << ',' << r.query.local_index << ','
        << r.query.global_index << ',';
    if (r.routed_robot >= 0) out << r.routed_robot;
    out << ',';
    if (r.match) {
      out << r.match->robot << ',' << r.match->local_index << ','
          << r.match->global_index << ',';
    } else {
      out << ",,,";
    }
    if (r.nn_distance) out << format_real(*r.nn_distance);
    out << ',' << (r.has_gt_match ? 1 : 0) << ',' << (r.is_true_positive ? 1 : 0)
        << ',' << r.bytes_sent << '\n';
  }
  write_text_file(path, out.str());
}

void write_pr_csv(const std::string& path, const PRCurve& curve) {
  std::ostringstream out;
  out << "threshold,precision,recall\n";
  for (const PRPoint& p : curve.points) {
    out << format_real(p.threshold) << ',' << format_real(p.precision) << ','
        << format_real(p.recall) << '\n';
  }
  write_text_file(path, out.str());
}

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "n,trial,relative_auc,worst_balance_ratio\n";
  for (const SweepRow& r : rows) {
    out << r.n << ',' << r.trial << ',' << format_real(r.relative_auc) << ','
        << format_real(r.worst_balance_ratio) << '\n';
  }
  write_text_file(path, out.str());
}

void write_sweep_mean_csv(const std::string& path,
                          std::span<const SweepMeanRow> means) {
  std::ostringstream out;
  out << "n,mean_relative_auc,mean_worst_balance_ratio\n";
  for (const SweepMeanRow& r : means) {
    out << r.n << ',' << format_real(r.mean_relative_auc) << ','
        << format_real(r.mean_worst_balance_ratio) << '\n';
  }
  write_text_file(path, out.str());
}

namespace {

std::string confusion_header(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "query_global_index";
  for (std::size_t c = 0; c < matrix.candidate_count(); ++c)
    out << ',' << matrix.global_index_of(c);
  out << '\n';
  return out.str();
}

}  // namespace

void write_confusion_match_csv(const std::string& path,
                               const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << confusion_header(matrix);
  for (std::size_t q = 0; q < matrix.query_count(); ++q) {
    out << matrix.global_index_of(q);
    for (std::size_t c = 0; c < matrix.candidate_count(); ++c)
      out << ',' << (matrix.match_at(q, c) ? 1 : 0);
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_confusion_distance_csv(const std::string& path,
                                  const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << confusion_header(matrix);
  for (std::size_t q = 0; q < matrix.query_count(); ++q) {
    out << matrix.global_index_of(q);
    const auto entry = matrix.row_entry(q);
    for (std::size_t c = 0; c < matrix.candidate_count(); ++c) {
      if (entry && entry->first == c)
        out << ',' << format_real(entry->second);
      else
        out << ",inf";
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_scatter_csv(const std::string& path,
                       std::span<const Descriptor> training,
                       std::span<const Descriptor> deployment) {
  std::ostringstream out;
  out << "set,dim0,dim1\n";
  const auto emit = [&out](const char* label, std::span<const Descriptor> set) {
    for (const Descriptor& d : set) {
      if (d.dim() < 2) throw ConfigError("scatter needs at least two dimensions");
      out << label << ',' << format_real(d.values[0]) << ','
          << format_real(d.values[1]) << '\n';
    }
  };
  emit("training", training);
  emit("deployment", deployment);
  write_text_file(path, out.str());
}

void write_summary_json(const std::string& path, const RunSummary& summary) {
  nlohmann::json j;
  j["auc_centralized"] = summary.auc_centralized;
  j["auc_decentralized"] = summary.auc_decentralized;
  j["bytes_broadcast_baseline_total"] = summary.bytes_broadcast_baseline_total;
  j["bytes_decentralized_total"] = summary.bytes_decentralized_total;
  j["bytes_per_query_decentralized"] = summary.bytes_per_query_decentralized;
  j["dim"] = summary.dim;
  j["frames"] = summary.frames;
  j["k"] = summary.k;
  j["n"] = summary.n;
  j["relative_auc"] = summary.relative_auc;
  j["seed"] = summary.seed;
  j["worst_balance_ratio"] = summary.worst_balance_ratio;
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace dvpr
