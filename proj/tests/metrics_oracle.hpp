#pragma once

// One-shot metrics computed from a finished count matrix, independent of the
// running sums kept by ConfusionMatrix.

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <vector>

#include "facade/eval.hpp"
#include "facade/random.hpp"

namespace facade::test {

struct OracleMetrics {
  double oa = 0;
  std::vector<std::optional<double>> pa, ua;
  double rm = 0;
  std::optional<double> kappa;
};

inline OracleMetrics oracle_metrics(const Eigen::MatrixXd& m) {
  OracleMetrics r;
  const double total = m.sum();
  r.oa = m.diagonal().sum() / total;
  const Eigen::VectorXd rows = m.rowwise().sum();
  const Eigen::RowVectorXd cols = m.colwise().sum();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    r.pa.push_back(rows(k) > 0 ? std::optional<double>(m(k, k) / rows(k)) : std::nullopt);
    r.ua.push_back(cols(k) > 0 ? std::optional<double>(m(k, k) / cols(k)) : std::nullopt);
  }
  r.rm = cols.dot(rows) / (total * total);
  if (r.rm < 1) r.kappa = (r.oa - r.rm) / (1 - r.rm);
  return r;
}

inline bool close(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

/// Streamed metrics of `cm` agree with the one-shot oracle on its counts.
inline bool metrics_agree(const ConfusionMatrix& cm, double tol) {
  const auto o = oracle_metrics(cm.counts().cast<double>());
  const auto m = metrics(cm);
  bool ok = std::abs(m.overall_accuracy - o.oa) <= tol && std::abs(m.random_match - o.rm) <= tol &&
            close(m.kappa, o.kappa, tol);
  for (int k = 0; k < cm.size(); ++k) {
    const auto& id = cm.classes()[static_cast<std::size_t>(k)];
    ok = ok && close(m.producers_accuracy.at(id), o.pa[static_cast<std::size_t>(k)], tol) &&
         close(m.users_accuracy.at(id), o.ua[static_cast<std::size_t>(k)], tol);
  }
  return ok;
}

/// Random matrix with up to `max_classes` classes and cells in [0, max_count],
/// built by streaming single accumulations; never empty.
inline ConfusionMatrix random_confusion(Rng& rng, int max_classes = 6, int max_count = 100) {
  const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(max_classes)));
  std::vector<std::string> classes;
  for (int k = 0; k < n; ++k) classes.push_back("c" + std::to_string(k));
  ConfusionMatrix cm(classes);
  // sparse rows/columns show up often enough to exercise n/a handling
  const double zero_prob = uniform01(rng) * 0.6;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (uniform01(rng) < zero_prob) continue;
      const auto c = uniform_index(rng, static_cast<std::uint64_t>(max_count) + 1);
      for (std::uint64_t t = 0; t < c; ++t) cm.accumulate(classes[static_cast<std::size_t>(i)], classes[static_cast<std::size_t>(j)]);
    }
  if (cm.total() == 0) cm.accumulate(0, static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n))));
  return cm;
}

}  // namespace facade::test
