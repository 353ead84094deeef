#pragma once

// Deterministic input for the golden codebook: 25 random bit prototypes, 20
// noisy copies each (5% bit flips).

#include <Eigen/Core>

#include "facade/codebook.hpp"
#include "facade/random.hpp"

namespace facade::test {

inline constexpr int kGoldenClusters = 25;
inline constexpr std::uint64_t kGoldenSeed = 20240607;
inline constexpr const char* kGoldenFingerprint = "golden-recipe";

inline Eigen::MatrixXd golden_descriptors() {
  Rng rng(kGoldenSeed);
  Eigen::MatrixXd protos(kGoldenClusters, 256);
  for (Eigen::Index i = 0; i < protos.size(); ++i) protos(i) = uniform01(rng) < 0.5 ? 0.0 : 1.0;
  Eigen::MatrixXd out(kGoldenClusters * 20, 256);
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < 256; ++c) {
      const double b = protos(r % kGoldenClusters, c);
      out(r, c) = uniform01(rng) < 0.05 ? 1.0 - b : b;
    }
  return out;
}

inline Codebook golden_codebook() {
  return train_codebook(golden_descriptors(), kGoldenClusters, kGoldenSeed, kGoldenFingerprint);
}

}  // namespace facade::test
