#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "facade/knn.hpp"
#include "facade/point_cloud.hpp"
#include "facade/random.hpp"

namespace facade {

struct PrepConfig {
  double voxel_size = 0.005;  ///< meters; 0 skips downsampling
  int outlier_neighbors_k = 8;
  double outlier_std_ratio_base = 2.0;
  double reference_height = 0.0;  ///< meters; average window height above ground
  std::uint64_t seed = 0;

  bool operator==(const PrepConfig&) const = default;
};

struct NoiseConfig {
  double sigma = 0.0;  ///< fraction of the bounding-box diagonal
  std::uint64_t seed = 0;

  bool operator==(const NoiseConfig&) const = default;
};

/// Std-ratio used by remove_outliers: the base ratio relaxed linearly with
/// height, so sparser clouds high on the facade lose fewer points.
inline double outlier_std_ratio(const PrepConfig& cfg) {
  return cfg.outlier_std_ratio_base * (1.0 + cfg.reference_height / 10.0);
}

/// Mean distance from every point to its k nearest neighbours (self excluded).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mean_knn_distance(const Points3<Scalar>& points, int k) {
  KdTree3<Scalar> tree(points);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mean(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const auto nn = tree.nearest(points.col(i), static_cast<std::size_t>(k) + 1);
    Scalar sum = 0;
    int used = 0;
    bool skipped_self = false;
    for (const auto& [d2, idx] : nn) {
      if (!skipped_self && idx == i) {
        skipped_self = true;
        continue;
      }
      if (used == k) break;
      sum += std::sqrt(d2);
      ++used;
    }
    mean(i) = sum / static_cast<Scalar>(used);
  }
  return mean;
}

/// Statistical kNN outlier filter: drops points whose mean neighbour distance
/// exceeds mu + r * sigma of that statistic over the cloud.
template <typename Scalar>
PointCloudT<Scalar> remove_outliers(const PointCloudT<Scalar>& cloud, const PrepConfig& cfg) {
  if (cfg.outlier_neighbors_k < 1) throw Error("outlier_neighbors_k must be >= 1");
  if (!(cfg.outlier_std_ratio_base > 0)) throw Error("outlier_std_ratio_base must be positive");
  if (cfg.reference_height < 0) throw Error("reference_height must be >= 0");
  if (cloud.size() < cfg.outlier_neighbors_k + 1) throw Error("outlier removal needs at least k+1 points");

  const auto mean = mean_knn_distance(cloud.points, cfg.outlier_neighbors_k);
  const Scalar mu = mean.mean();
  const Scalar sigma = std::sqrt((mean.array() - mu).square().sum() / static_cast<Scalar>(mean.size()));
  const Scalar threshold = mu + static_cast<Scalar>(outlier_std_ratio(cfg)) * sigma;

  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(cloud.size()));
  for (Eigen::Index i = 0; i < cloud.size(); ++i)
    if (!(mean(i) > threshold)) keep.push_back(i);
  if (static_cast<double>(keep.size()) < 0.1 * static_cast<double>(cloud.size()))
    throw Error("outlier filter too aggressive");

  PointCloudT<Scalar> out;
  out.label = cloud.label;
  out.points.resize(3, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.points.col(static_cast<Eigen::Index>(j)) = cloud.points.col(keep[j]);
  return out;
}

/// Voxel-grid downsampling: one centroid per occupied voxel, emitted in order of
/// each voxel's first point.
template <typename Scalar>
PointCloudT<Scalar> downsample(const PointCloudT<Scalar>& cloud, double voxel_size) {
  if (voxel_size < 0) throw Error("voxel_size must be >= 0");
  if (voxel_size == 0 || cloud.empty()) return cloud;

  struct KeyHash {
    std::size_t operator()(const Eigen::Vector3<std::int64_t>& k) const {
      std::uint64_t h = 14695981039346656037ULL;
      for (int i = 0; i < 3; ++i) h = (h ^ static_cast<std::uint64_t>(k(i))) * 1099511628211ULL;
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<Eigen::Vector3<std::int64_t>, Eigen::Index, KeyHash> slot;
  std::vector<Eigen::Matrix<Scalar, 3, 1>> sums;
  std::vector<Eigen::Index> counts;
  const Eigen::Matrix<Scalar, 3, 1> origin = cloud.points.rowwise().minCoeff();
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const Eigen::Vector3<std::int64_t> key =
        ((cloud.points.col(i) - origin).template cast<double>() / voxel_size).array().floor().template cast<std::int64_t>();
    auto [it, inserted] = slot.try_emplace(key, static_cast<Eigen::Index>(sums.size()));
    if (inserted) {
      sums.push_back(Eigen::Matrix<Scalar, 3, 1>::Zero());
      counts.push_back(0);
    }
    sums[static_cast<std::size_t>(it->second)] += cloud.points.col(i);
    ++counts[static_cast<std::size_t>(it->second)];
  }
  PointCloudT<Scalar> out;
  out.label = cloud.label;
  out.points.resize(3, static_cast<Eigen::Index>(sums.size()));
  for (std::size_t j = 0; j < sums.size(); ++j)
    out.points.col(static_cast<Eigen::Index>(j)) = sums[j] / static_cast<Scalar>(counts[j]);
  return out;
}

/// Centroid to the origin, longest bounding-box edge to 1.
template <typename Scalar>
PointCloudT<Scalar> normalize(const PointCloudT<Scalar>& cloud) {
  if (cloud.empty()) throw Error("cannot normalize an empty cloud");
  const Scalar edge = bounding_box(cloud.points).extent().maxCoeff();
  if (!(edge > 0)) throw Error("degenerate cloud");
  PointCloudT<Scalar> out;
  out.label = cloud.label;
  out.points = (cloud.points.colwise() - cloud.points.rowwise().mean()) / edge;
  return out;
}

/// Isotropic Gaussian jitter with std sigma * bbox diagonal on every coordinate.
template <typename Scalar>
PointCloudT<Scalar> add_noise(const PointCloudT<Scalar>& cloud, const NoiseConfig& cfg) {
  if (cfg.sigma < 0) throw Error("noise sigma must be >= 0");
  if (cloud.empty()) throw Error("cannot add noise to an empty cloud");
  PointCloudT<Scalar> out = cloud;
  if (cfg.sigma == 0) return out;
  const double std_dev = cfg.sigma * static_cast<double>(bounding_box(cloud.points).diagonal());
  Rng rng(cfg.seed);
  for (Eigen::Index i = 0; i < out.size(); ++i)
    for (int c = 0; c < 3; ++c) out.points(c, i) += static_cast<Scalar>(std_dev * standard_normal(rng));
  return out;
}

}  // namespace facade
