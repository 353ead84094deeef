#pragma once

#include <Eigen/Core>

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "facade/binary_image.hpp"

namespace facade {

inline constexpr int kDescriptorBits = 256;
inline constexpr int kPatchHalf = 15;     ///< 31x31 patch
inline constexpr int kBorderMargin = 16;  ///< keypoints closer to the border are dropped

/// One BRIEF intensity test: bit = I(x1, y1) < I(x2, y2), offsets from the keypoint.
struct BriefPair {
  int x1, y1, x2, y2;
};

/// Fixed test pattern (see tools/gen_brief_pattern.py); all points within radius 15.
extern const std::array<BriefPair, kDescriptorBits> kBriefPattern;

struct Keypoint {
  int x = 0;
  int y = 0;
  double orientation = 0;  ///< radians
  double response = 0;
};

/// 256-bit binary descriptor.
struct OrbDescriptor {
  std::array<std::uint64_t, 4> words{};

  bool bit(int i) const { return (words[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; }
  void set_bit(int i) { words[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  bool operator==(const OrbDescriptor&) const = default;
};

inline int hamming(const OrbDescriptor& a, const OrbDescriptor& b) {
  int d = 0;
  for (std::size_t w = 0; w < a.words.size(); ++w) d += std::popcount(a.words[w] ^ b.words[w]);
  return d;
}

enum class DescriptorSource { keypoint, dense };

struct DescriptorSet {
  std::vector<OrbDescriptor> descriptors;
  DescriptorSource source = DescriptorSource::keypoint;

  std::size_t size() const { return descriptors.size(); }
  bool empty() const { return descriptors.empty(); }
};

/// Descriptors as rows of 0.0/1.0, the space the codebook is trained in.
Eigen::MatrixXd embed(const std::vector<OrbDescriptor>& descriptors);

inline constexpr int kDefaultFastThreshold = 20;
inline constexpr int kDefaultMaxKeypoints = 500;

/// FAST-9 on the {0,255}-scaled image with 3x3 non-maximum suppression.
/// Keypoints within kBorderMargin of the border are dropped. Returned in raster order.
std::vector<Keypoint> detect_fast(const BinaryImage& img, int threshold = kDefaultFastThreshold);

/// Orientation of the intensity centroid over the radius-15 disc around (x, y).
double intensity_centroid_angle(const BinaryImage& img, int x, int y);

/// Steered BRIEF over kBriefPattern rotated by `angle`. Equal pixels give 0.
OrbDescriptor describe_brief(const BinaryImage& img, int x, int y, double angle);

struct OrbFeatures {
  std::vector<Keypoint> keypoints;
  DescriptorSet descriptors;
};

/// Single-scale ORB: FAST-9 corners ranked by response (ties by y, then x),
/// capped at max_keypoints, oriented and described.
OrbFeatures detect_orb(const BinaryImage& img, int max_keypoints = kDefaultMaxKeypoints,
                       int fast_threshold = kDefaultFastThreshold);

/// Nodes of the dense grid: floor((W-32)/stride + 1) * floor((H-32)/stride + 1).
std::size_t dense_grid_count(int width, int height, int stride);

/// ORB descriptors (orientation 0) on a grid with 16 px margins.
DescriptorSet dense_orb(const BinaryImage& img, int stride);

struct HogConfig {
  int cell_size = 8;
  int bins = 9;

  bool operator==(const HogConfig&) const = default;
};

/// Flattened HOG: 2x2-cell blocks at one-cell stride, row-major block order,
/// each block 4*bins values (cells row-major, bins innermost).
struct HogVector {
  Eigen::VectorXd values;
  int cell_size = 8;
  int bins = 9;
  int cells_x = 0;
  int cells_y = 0;

  int blocks_x() const { return cells_x > 1 ? cells_x - 1 : 0; }
  int blocks_y() const { return cells_y > 1 ? cells_y - 1 : 0; }
  int block_length() const { return 4 * bins; }
};

/// The image is zero-padded to a multiple of cell_size; gradients by central
/// differences (edge-replicated); unsigned orientation with bin centres at
/// k*180/bins and linear vote interpolation; L2 block norm, clip at 0.2,
/// renormalize.
HogVector compute_hog(const BinaryImage& img, const HogConfig& cfg = {});

}  // namespace facade
