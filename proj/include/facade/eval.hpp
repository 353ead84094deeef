#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facade/json_out.hpp"

namespace facade {

/// Square count matrix, rows = ground truth, columns = predicted. Row sums,
/// column sums, trace and total are maintained incrementally.
class ConfusionMatrix {
 public:
  using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> classes);
  /// Rebuilds the running sums from a full matrix.
  ConfusionMatrix(std::vector<std::string> classes, const Counts& counts);

  void accumulate(const std::string& truth, const std::string& predicted);
  void accumulate(int truth, int predicted, std::int64_t times = 1);
  /// Adds another matrix over the same classes.
  void merge(const ConfusionMatrix& other);

  const std::vector<std::string>& classes() const { return classes_; }
  int index_of(const std::string& id) const;
  const Counts& counts() const { return counts_; }
  std::int64_t total() const { return total_; }
  std::int64_t trace() const { return trace_; }
  std::int64_t row_sum(int i) const { return row_sums_[static_cast<std::size_t>(i)]; }
  std::int64_t col_sum(int j) const { return col_sums_[static_cast<std::size_t>(j)]; }
  int size() const { return static_cast<int>(classes_.size()); }

  bool operator==(const ConfusionMatrix& o) const {
    return classes_ == o.classes_ && counts_ == o.counts_;
  }

 private:
  std::vector<std::string> classes_;
  Counts counts_;
  std::vector<std::int64_t> row_sums_, col_sums_;
  std::int64_t trace_ = 0, total_ = 0;
};

double overall_accuracy(const ConfusionMatrix& cm);

struct ClassAccuracy {
  std::optional<double> producers;  ///< empty when the class has no ground-truth samples
  std::optional<double> users;      ///< empty when nothing was predicted as the class
};

std::vector<ClassAccuracy> producers_users_accuracy(const ConfusionMatrix& cm);

double random_match(const ConfusionMatrix& cm);

struct Kappa {
  double kappa;
  double random_match;
};

/// Cohen's kappa; throws "kappa undefined" when RM = 1.
Kappa kappa(const ConfusionMatrix& cm);

struct MetricsReport {
  double overall_accuracy = 0;
  std::map<std::string, std::optional<double>> producers_accuracy;
  std::map<std::string, std::optional<double>> users_accuracy;
  std::optional<double> kappa;
  double random_match = 0;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport metrics(const ConfusionMatrix& cm);

/// One labelled report row group, e.g. one noise level or one run.
struct ReportEntry {
  std::string config;
  MetricsReport metrics;
  ConfusionMatrix confusion;
};

/// CSV with header `config,class,PA,UA`; per-class rows, then summary rows
/// whose class column is OA, kappa or RM and whose value sits in the PA column.
/// Undefined values are written as n/a.
std::string metrics_csv(const std::vector<ReportEntry>& entries);
/// Parses metrics_csv output back (confusion matrices are not part of the CSV).
std::vector<std::pair<std::string, MetricsReport>> parse_metrics_csv(const std::string& text);

OrderedJson to_json(const ConfusionMatrix& cm);
OrderedJson to_json(const MetricsReport& report);
OrderedJson report_json(const std::vector<ReportEntry>& entries);

}  // namespace facade
