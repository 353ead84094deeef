#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

#include "facade/error.hpp"

namespace facade {

template <typename Scalar>
using Points3 = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

/// 3D points stored column-wise, in meters.
template <typename Scalar>
struct PointCloudT {
  Points3<Scalar> points;
  std::optional<std::string> label;

  Eigen::Index size() const { return points.cols(); }
  bool empty() const { return points.cols() == 0; }

  bool operator==(const PointCloudT& other) const {
    return label == other.label && points.cols() == other.points.cols() && points == other.points;
  }
};

using PointCloud = PointCloudT<double>;

template <typename Scalar>
struct BoundingBox {
  Eigen::Matrix<Scalar, 3, 1> min;
  Eigen::Matrix<Scalar, 3, 1> max;

  Eigen::Matrix<Scalar, 3, 1> extent() const { return max - min; }
  Scalar diagonal() const { return extent().norm(); }
  bool contains(const Eigen::Matrix<Scalar, 3, 1>& p, Scalar tol = Scalar(0)) const {
    return ((p.array() >= min.array() - tol) && (p.array() <= max.array() + tol)).all();
  }
};

template <typename Derived>
BoundingBox<typename Derived::Scalar> bounding_box(const Eigen::MatrixBase<Derived>& points) {
  if (points.cols() == 0) throw Error("bounding box of an empty point set");
  return {points.rowwise().minCoeff(), points.rowwise().maxCoeff()};
}

template <typename Scalar>
void require_finite(const PointCloudT<Scalar>& cloud) {
  if (!cloud.points.allFinite()) throw Error("point cloud contains non-finite coordinates");
}

}  // namespace facade
