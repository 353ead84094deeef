#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <vector>

#include "facade/error.hpp"
#include "facade/random.hpp"

namespace facade {

struct KMeansOptions {
  int max_iterations = 300;
  std::uint64_t seed = 0;
  /// Round centres to 0/1 after each update (k-majority); Euclidean distance
  /// to binary centres is then the square root of the Hamming distance.
  bool binary_centers = false;
};

template <typename Scalar>
struct KMeansResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> centers;  ///< one centre per row
  std::vector<int> assignment;
  std::vector<Scalar> inertia_history;  ///< after each assignment step
  int iterations = 0;
};

/// Index of the centre (row) nearest to `x` in squared Euclidean distance;
/// ties go to the lowest index.
template <typename DerivedX, typename DerivedC>
int nearest_center(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedC>& centers,
                   typename DerivedC::Scalar* dist2 = nullptr) {
  using Scalar = typename DerivedC::Scalar;
  int best = -1;
  Scalar best_d = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const Scalar d = (centers.row(c) - x.derived().template cast<Scalar>()).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

/// Lloyd's algorithm with k-means++ seeding over the rows of `data`. Stops when
/// no assignment changes or after max_iterations. Empty (or duplicated)
/// clusters are re-seeded with the point farthest from its centre.
template <typename Derived>
KMeansResult<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& data, int n, const KMeansOptions& opt = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index rows = data.rows();
  if (n < 1) throw Error("cluster count must be >= 1");
  if (rows < n) throw Error("fewer descriptors than clusters");

  Rng rng(opt.seed);
  Matrix centers(n, data.cols());

  // k-means++ seeding.
  Vector d2(rows);
  centers.row(0) = data.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(rows))));
  for (Eigen::Index i = 0; i < rows; ++i) d2(i) = (data.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < n; ++c) {
    const Scalar total = d2.sum();
    if (!(total > 0)) throw Error("fewer distinct descriptors than clusters");
    const Scalar target = static_cast<Scalar>(uniform01(rng)) * total;
    Scalar acc = 0;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (d2(i) <= 0) continue;
      acc += d2(i);
      pick = i;
      if (acc > target) break;
    }
    centers.row(c) = data.row(pick);
    for (Eigen::Index i = 0; i < rows; ++i) d2(i) = std::min(d2(i), (data.row(i) - centers.row(c)).squaredNorm());
  }

  KMeansResult<Scalar> res;
  res.assignment.assign(static_cast<std::size_t>(rows), -1);
  const Vector data_sq = data.rowwise().squaredNorm();
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    // Assignment step: |x|^2 - 2 x.c + |c|^2, ties to the lower index.
    const Matrix cross = data * centers.transpose();
    const Vector center_sq = centers.rowwise().squaredNorm();
    bool changed = false;
    Scalar inertia = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      int best = 0;
      Scalar best_d = std::numeric_limits<Scalar>::infinity();
      for (int c = 0; c < n; ++c) {
        const Scalar d = data_sq(i) - 2 * cross(i, c) + center_sq(c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      d2(i) = std::max(best_d, Scalar(0));
      inertia += d2(i);
      if (res.assignment[static_cast<std::size_t>(i)] != best) {
        res.assignment[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    res.inertia_history.push_back(inertia);
    res.iterations = iter + 1;
    if (!changed && iter > 0) break;

    // Update step.
    Matrix sums = Matrix::Zero(n, data.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const int a = res.assignment[static_cast<std::size_t>(i)];
      sums.row(a) += data.row(i);
      ++counts[static_cast<std::size_t>(a)];
    }
    for (int c = 0; c < n; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) continue;
      centers.row(c) = sums.row(c) / static_cast<Scalar>(counts[static_cast<std::size_t>(c)]);
      if (opt.binary_centers)
        centers.row(c) = (centers.row(c).array() >= Scalar(0.5)).template cast<Scalar>();
    }
    for (int c = 0; c < n; ++c) {
      bool reseed = counts[static_cast<std::size_t>(c)] == 0;
      for (int e = 0; e < c && !reseed; ++e) reseed = centers.row(e) == centers.row(c);
      if (!reseed) continue;
      Eigen::Index far;
      if (!(d2.maxCoeff(&far) > 0)) break;
      centers.row(c) = data.row(far);
      d2(far) = 0;
    }
  }
  res.centers = std::move(centers);
  return res;
}

}  // namespace facade
