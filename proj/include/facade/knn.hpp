#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "facade/point_cloud.hpp"

namespace facade {

/// Static 3D k-d tree over the columns of a point matrix. The matrix must
/// outlive the tree.
template <typename Scalar>
class KdTree3 {
 public:
  explicit KdTree3(const Points3<Scalar>& points) : points_(points), order_(static_cast<std::size_t>(points.cols())) {
    std::iota(order_.begin(), order_.end(), Eigen::Index{0});
    if (!order_.empty()) root_ = build(0, order_.size(), 0);
  }

  /// The k nearest columns to `query` as (squared distance, index), ascending.
  /// Ties are ordered by index.
  std::vector<std::pair<Scalar, Eigen::Index>> nearest(const Eigen::Matrix<Scalar, 3, 1>& query, std::size_t k) const {
    Heap heap;
    if (root_ >= 0 && k > 0) search(root_, query, k, heap);
    std::vector<std::pair<Scalar, Eigen::Index>> out;
    out.reserve(heap.size());
    while (!heap.empty()) {
      out.push_back(heap.top());
      heap.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  struct Node {
    std::size_t begin, end;  // leaf range into order_
    int axis = -1;
    Scalar split = 0;
    int left = -1, right = -1;
  };
  using Heap = std::priority_queue<std::pair<Scalar, Eigen::Index>>;
  static constexpr std::size_t kLeafSize = 12;

  int build(std::size_t begin, std::size_t end, int depth) {
    Node node{begin, end};
    if (end - begin > kLeafSize) {
      Eigen::Matrix<Scalar, 3, 1> lo = points_.col(order_[begin]), hi = lo;
      for (std::size_t i = begin; i < end; ++i) {
        lo = lo.cwiseMin(points_.col(order_[i]));
        hi = hi.cwiseMax(points_.col(order_[i]));
      }
      int axis;
      (hi - lo).maxCoeff(&axis);
      const std::size_t mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                       order_.begin() + static_cast<std::ptrdiff_t>(end), [&](Eigen::Index a, Eigen::Index b) {
                         return points_(axis, a) < points_(axis, b) || (points_(axis, a) == points_(axis, b) && a < b);
                       });
      node.axis = axis;
      node.split = points_(axis, order_[mid]);
      const int self = static_cast<int>(nodes_.size());
      nodes_.push_back(node);
      const int l = build(begin, mid, depth + 1);
      const int r = build(mid, end, depth + 1);
      nodes_[static_cast<std::size_t>(self)].left = l;
      nodes_[static_cast<std::size_t>(self)].right = r;
      return self;
    }
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void search(int id, const Eigen::Matrix<Scalar, 3, 1>& q, std::size_t k, Heap& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.axis < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        const Eigen::Index idx = order_[i];
        const Scalar d2 = (points_.col(idx) - q).squaredNorm();
        const std::pair<Scalar, Eigen::Index> cand{d2, idx};
        if (heap.size() < k) {
          heap.push(cand);
        } else if (cand < heap.top()) {
          heap.pop();
          heap.push(cand);
        }
      }
      return;
    }
    const Scalar diff = q(node.axis) - node.split;
    const int near = diff < 0 ? node.left : node.right;
    const int far = diff < 0 ? node.right : node.left;
    search(near, q, k, heap);
    if (heap.size() < k || diff * diff <= heap.top().first) search(far, q, k, heap);
  }

  const Points3<Scalar>& points_;
  std::vector<Eigen::Index> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace facade
