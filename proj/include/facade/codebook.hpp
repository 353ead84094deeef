#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "facade/features.hpp"
#include "facade/json_out.hpp"
#include "facade/kmeans.hpp"

namespace facade {

inline constexpr int kCodebookVersion = 1;
inline constexpr const char* kCodebookMagic = "facade-codebook";
inline constexpr int kDefaultClusterCount = 25;

enum class ClusterMetric { euclidean, hamming };

ClusterMetric parse_cluster_metric(const std::string& s);
std::string to_string(ClusterMetric m);

/// Visual dictionary: one centre per row, in the 0/1 descriptor embedding.
struct Codebook {
  Eigen::MatrixXd centers;
  std::string feature_fingerprint;
  std::uint64_t seed = 0;
  ClusterMetric metric = ClusterMetric::euclidean;

  int n() const { return static_cast<int>(centers.rows()); }
  int dim() const { return static_cast<int>(centers.cols()); }
  bool operator==(const Codebook& o) const {
    return centers.rows() == o.centers.rows() && centers.cols() == o.centers.cols() && centers == o.centers &&
           feature_fingerprint == o.feature_fingerprint && seed == o.seed && metric == o.metric;
  }
};

Codebook train_codebook(const Eigen::MatrixXd& descriptors, int n, std::uint64_t seed, std::string fingerprint = {},
                        ClusterMetric metric = ClusterMetric::euclidean);

/// Nearest centre per descriptor row (ties to the lowest index).
std::vector<int> assign(const Eigen::MatrixXd& descriptors, const Codebook& book);

/// L1-normalized occurrence histogram; all-zero for an empty set.
Eigen::VectorXd quantize(const Eigen::MatrixXd& descriptors, const Codebook& book);
Eigen::VectorXd quantize(const DescriptorSet& descriptors, const Codebook& book);

/// FNV-1a over n, dim and the raw bytes of the centres.
std::uint64_t content_hash(const Codebook& book);

OrderedJson to_json(const Codebook& book);
Codebook codebook_from_json(const nlohmann::json& j);
void save_codebook(const std::filesystem::path& path, const Codebook& book);
Codebook load_codebook(const std::filesystem::path& path);

/// BoW block followed by the weighted HOG block.
struct CombinedHistogram {
  Eigen::VectorXd values;
  Eigen::Index block_boundary = 0;
  double hog_weight = 1.0;

  auto bow() const { return values.head(block_boundary); }
  auto hog() const { return values.tail(values.size() - block_boundary); }
  Eigen::Index size() const { return values.size(); }
  bool operator==(const CombinedHistogram& o) const {
    return block_boundary == o.block_boundary && hog_weight == o.hog_weight && values.size() == o.values.size() &&
           values == o.values;
  }
};

/// Appends hog_weight * (HOG / |HOG|_1) after the BoW histogram; an all-zero
/// HOG block stays zero.
CombinedHistogram fuse(const Eigen::VectorXd& bow, const Eigen::VectorXd& hog, double hog_weight);
CombinedHistogram fuse(const Eigen::VectorXd& bow, const HogVector& hog, double hog_weight);
/// BoW only (empty HOG block).
CombinedHistogram bow_only(const Eigen::VectorXd& bow);

/// Divides by the L1 mass; zero vectors are returned unchanged.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> l1_normalized(const Eigen::MatrixBase<Derived>& v) {
  const auto mass = v.cwiseAbs().sum();
  if (mass == 0) return v;
  return v / mass;
}

struct ClusterOccupancy {
  int n = 0;
  std::vector<int> counts;
  double empty_fraction = 0;
  double overloaded_fraction = 0;  ///< clusters holding more than 3x the mean occupancy
  double inertia = 0;
};

struct SuggestNReport {
  std::vector<ClusterOccupancy> sweep;
  int suggested_n = 0;  ///< minimal (empty + overloaded) fraction; smallest n on ties
};

/// Experimental clustering sweep over candidate cluster counts. Report only.
SuggestNReport suggest_n(const Eigen::MatrixXd& descriptors, const std::vector<int>& candidates, std::uint64_t seed,
                         ClusterMetric metric = ClusterMetric::euclidean);

}  // namespace facade
