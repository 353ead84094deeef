#pragma once

// Histogram distances over Eigen vector expressions. Every function accepts
// any pair of same-length dense vectors of the same scalar type.

#include <Eigen/Core>

#include <cmath>
#include <string>

#include "facade/error.hpp"

namespace facade {

/// Additive floor for KL denominators where Q(i) = 0 but P(i) > 0.
inline constexpr double kKlEpsilon = 1e-10;
/// Chi-square bins whose denominator is at most this are skipped.
inline constexpr double kChiSquareEpsilon = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-6;

namespace detail {

template <typename DP, typename DQ>
void require_same_length(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  if (p.size() != q.size())
    throw Error("histogram length mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
}

template <typename D>
void require_normalized(const Eigen::MatrixBase<D>& p) {
  const double mass = static_cast<double>(p.sum());
  if ((p.array() < 0).any() || std::abs(mass - 1.0) > kNormalizationTolerance)
    throw Error("histogram is not L1-normalized (mass " + std::to_string(mass) + ")");
}

}  // namespace detail

/// (sum |q_i - p_i|^p)^(1/p), p >= 1. Large p approaches the Chebyshev distance.
template <typename DP, typename DQ>
typename DP::Scalar minkowski(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q, double order) {
  using Scalar = typename DP::Scalar;
  detail::require_same_length(p, q);
  if (!(order >= 1)) throw Error("Minkowski order must be >= 1");
  const auto diff = (q - p).cwiseAbs().eval();
  // Scale by the largest term so large orders neither underflow nor overflow.
  const Scalar top = diff.size() ? diff.maxCoeff() : Scalar(0);
  if (top == 0) return Scalar(0);
  const Scalar sum = (diff / top).array().pow(static_cast<Scalar>(order)).sum();
  return top * std::pow(sum, Scalar(1) / static_cast<Scalar>(order));
}

/// sum P(i) ln(P(i)/Q(i)); 0 ln 0 = 0, Q(i) = 0 < P(i) uses kKlEpsilon.
template <typename DP, typename DQ>
typename DP::Scalar kl_divergence(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  using Scalar = typename DP::Scalar;
  detail::require_same_length(p, q);
  detail::require_normalized(p);
  detail::require_normalized(q);
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p(i);
    if (pi <= 0) continue;
    const Scalar qi = q(i) > 0 ? Scalar(q(i)) : static_cast<Scalar>(kKlEpsilon);
    sum += pi * std::log(pi / qi);
  }
  return sum;
}

/// (KL(P||M) + KL(Q||M)) / 2 with M = (P + Q) / 2; within [0, ln 2].
template <typename DP, typename DQ>
typename DP::Scalar jensen_shannon(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q) {
  using Scalar = typename DP::Scalar;
  detail::require_same_length(p, q);
  detail::require_normalized(p);
  detail::require_normalized(q);
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p(i), qi = q(i);
    const Scalar m = (pi + qi) / 2;
    if (pi > 0) sum += pi * std::log(pi / m);
    if (qi > 0) sum += qi * std::log(qi / m);
  }
  return sum / 2;
}

/// Pearson chi-square, sum (P(i) - Q(i))^2 / P(i) over bins with P(i) > eps.
/// Symmetric variant: denominator P(i) + Q(i), bins with P(i) + Q(i) > eps.
template <typename DP, typename DQ>
typename DP::Scalar chi_square(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DQ>& q, bool symmetric) {
  using Scalar = typename DP::Scalar;
  detail::require_same_length(p, q);
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar denom = symmetric ? Scalar(p(i) + q(i)) : Scalar(p(i));
    if (!(denom > static_cast<Scalar>(kChiSquareEpsilon))) continue;
    const Scalar d = p(i) - q(i);
    sum += d * d / denom;
  }
  return sum;
}

}  // namespace facade
