#pragma once

#include <string>
#include <utility>
#include <vector>

#include "facade/codebook.hpp"
#include "facade/distances.hpp"
#include "facade/json_out.hpp"

namespace facade {

struct DistanceKind {
  enum class Type { minkowski, jensen_shannon, kullback_leibler, chi_square_pearson, chi_square_symmetric };
  Type type = Type::chi_square_pearson;
  double p = 2.0;  ///< Minkowski order

  bool operator==(const DistanceKind&) const = default;
};

/// "minkowski:P", "jsd", "kl", "chi2", "chi2sym".
DistanceKind parse_distance(const std::string& s);
std::string to_string(const DistanceKind& kind);

/// Distance between a library histogram (first argument) and a target. KL and
/// JSD see both vectors rescaled to unit L1 mass over all blocks.
double histogram_distance(const Eigen::VectorXd& model, const Eigen::VectorXd& target, const DistanceKind& kind);

struct LibraryEntry {
  std::string model_id;
  CombinedHistogram histogram;
};

struct MatchResult {
  std::vector<std::pair<std::string, double>> ranking;  ///< ascending distance, ties by model_id

  const std::string& best() const { return ranking.front().first; }
};

MatchResult match(const CombinedHistogram& target, const std::vector<LibraryEntry>& library, const DistanceKind& kind);

OrderedJson to_json(const MatchResult& result);

}  // namespace facade
