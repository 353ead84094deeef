#include "facade/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "facade/error.hpp"

namespace facade {
namespace {

constexpr std::array<std::array<int, 2>, 16> kFastCircle = {{{0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1},
                                                              {2, 2}, {1, 3}, {0, 3}, {-1, 3}, {-2, 2}, {-3, 1},
                                                              {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}}};
constexpr int kFastArc = 9;

int intensity(const BinaryImage& img, int x, int y) { return img.get(x, y) ? 255 : 0; }

// Corner score, or 0 when no arc of kFastArc contiguous pixels is uniformly
// brighter or darker than the centre by more than the threshold.
double fast_score(const BinaryImage& img, int x, int y, int threshold) {
  const int p = intensity(img, x, y);
  std::array<int, 16> state{};
  for (std::size_t i = 0; i < 16; ++i) {
    const int v = intensity(img, x + kFastCircle[i][0], y + kFastCircle[i][1]);
    state[i] = v > p + threshold ? 1 : (v < p - threshold ? -1 : 0);
  }
  double best = 0;
  for (int polarity : {1, -1}) {
    int run = 0, longest = 0;
    for (int i = 0; i < 32; ++i) {
      run = state[static_cast<std::size_t>(i % 16)] == polarity ? run + 1 : 0;
      longest = std::max(longest, std::min(run, 16));
    }
    if (longest < kFastArc) continue;
    double sad = 0;
    for (std::size_t i = 0; i < 16; ++i)
      if (state[i] == polarity)
        sad += std::abs(intensity(img, x + kFastCircle[i][0], y + kFastCircle[i][1]) - p) - threshold;
    best = std::max(best, sad);
  }
  return best;
}

// Half-widths of the radius-15 disc per row offset, symmetric under 90 degree turns.
std::array<int, kPatchHalf + 1> disc_half_widths() {
  std::array<int, kPatchHalf + 1> umax{};
  const int vmax = static_cast<int>(std::floor(kPatchHalf * std::sqrt(2.0) / 2 + 1));
  const int vmin = static_cast<int>(std::ceil(kPatchHalf * std::sqrt(2.0) / 2));
  for (int v = 0; v <= vmax; ++v)
    umax[static_cast<std::size_t>(v)] = static_cast<int>(std::lround(std::sqrt(double(kPatchHalf * kPatchHalf - v * v))));
  for (int v = kPatchHalf, v0 = 0; v >= vmin; --v) {
    while (umax[static_cast<std::size_t>(v0)] == umax[static_cast<std::size_t>(v0 + 1)]) ++v0;
    umax[static_cast<std::size_t>(v)] = v0;
    ++v0;
  }
  return umax;
}

const std::array<int, kPatchHalf + 1>& half_widths() {
  static const auto umax = disc_half_widths();
  return umax;
}

}  // namespace

Eigen::MatrixXd embed(const std::vector<OrbDescriptor>& descriptors) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(descriptors.size()), kDescriptorBits);
  for (std::size_t r = 0; r < descriptors.size(); ++r)
    for (int b = 0; b < kDescriptorBits; ++b) out(static_cast<Eigen::Index>(r), b) = descriptors[r].bit(b) ? 1.0 : 0.0;
  return out;
}

std::vector<Keypoint> detect_fast(const BinaryImage& img, int threshold) {
  const int w = img.width(), h = img.height();
  Eigen::ArrayXXd score = Eigen::ArrayXXd::Zero(h, w);
  for (int y = 3; y < h - 3; ++y)
    for (int x = 3; x < w - 3; ++x) score(y, x) = fast_score(img, x, y, threshold);

  std::vector<Keypoint> out;
  for (int y = kBorderMargin; y < h - kBorderMargin; ++y)
    for (int x = kBorderMargin; x < w - kBorderMargin; ++x) {
      const double s = score(y, x);
      if (s <= 0) continue;
      bool peak = true;
      for (int dy = -1; dy <= 1 && peak; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const double n = score(y + dy, x + dx);
          // Plateaus keep their first pixel in raster order.
          const bool earlier = dy < 0 || (dy == 0 && dx < 0);
          if (n > s || (n == s && earlier)) {
            peak = false;
            break;
          }
        }
      if (peak) out.push_back({x, y, 0.0, s});
    }
  return out;
}

double intensity_centroid_angle(const BinaryImage& img, int x, int y) {
  const auto& umax = half_widths();
  long m01 = 0, m10 = 0;
  for (int v = -kPatchHalf; v <= kPatchHalf; ++v) {
    const int d = umax[static_cast<std::size_t>(std::abs(v))];
    for (int u = -d; u <= d; ++u) {
      const int i = img.get(x + u, y + v);
      m10 += u * i;
      m01 += v * i;
    }
  }
  return std::atan2(static_cast<double>(m01), static_cast<double>(m10));
}

OrbDescriptor describe_brief(const BinaryImage& img, int x, int y, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto sample = [&](int px, int py) {
    const long rx = std::lround(px * c - py * s);
    const long ry = std::lround(px * s + py * c);
    return img.get(x + static_cast<int>(rx), y + static_cast<int>(ry));
  };
  OrbDescriptor d;
  for (int i = 0; i < kDescriptorBits; ++i) {
    const auto& pr = kBriefPattern[static_cast<std::size_t>(i)];
    if (sample(pr.x1, pr.y1) < sample(pr.x2, pr.y2)) d.set_bit(i);
  }
  return d;
}

OrbFeatures detect_orb(const BinaryImage& img, int max_keypoints, int fast_threshold) {
  if (img.width() == 0 || img.height() == 0) throw Error("ORB on an empty image");
  OrbFeatures out;
  out.descriptors.source = DescriptorSource::keypoint;
  auto kps = detect_fast(img, fast_threshold);
  std::stable_sort(kps.begin(), kps.end(), [](const Keypoint& a, const Keypoint& b) {
    if (a.response != b.response) return a.response > b.response;
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  if (max_keypoints >= 0 && kps.size() > static_cast<std::size_t>(max_keypoints))
    kps.resize(static_cast<std::size_t>(max_keypoints));
  for (auto& kp : kps) {
    kp.orientation = intensity_centroid_angle(img, kp.x, kp.y);
    out.descriptors.descriptors.push_back(describe_brief(img, kp.x, kp.y, kp.orientation));
  }
  out.keypoints = std::move(kps);
  return out;
}

std::size_t dense_grid_count(int width, int height, int stride) {
  if (stride < 1) throw Error("dense stride must be >= 1");
  if (width < 2 * kBorderMargin + 1 || height < 2 * kBorderMargin + 1)
    throw Error("image smaller than 33x33 cannot be densely sampled");
  const auto nx = static_cast<std::size_t>((width - 2 * kBorderMargin) / stride + 1);
  const auto ny = static_cast<std::size_t>((height - 2 * kBorderMargin) / stride + 1);
  return nx * ny;
}

DescriptorSet dense_orb(const BinaryImage& img, int stride) {
  const std::size_t expected = dense_grid_count(img.width(), img.height(), stride);
  DescriptorSet out;
  out.source = DescriptorSource::dense;
  out.descriptors.reserve(expected);
  for (int y = kBorderMargin; y <= img.height() - kBorderMargin; y += stride)
    for (int x = kBorderMargin; x <= img.width() - kBorderMargin; x += stride)
      out.descriptors.push_back(describe_brief(img, x, y, 0.0));
  return out;
}

HogVector compute_hog(const BinaryImage& img, const HogConfig& cfg) {
  if (cfg.cell_size < 1 || cfg.bins < 1) throw Error("HOG needs cell_size >= 1 and bins >= 1");
  const int cs = cfg.cell_size;
  const int w = (img.width() + cs - 1) / cs * cs;
  const int h = (img.height() + cs - 1) / cs * cs;
  auto pix = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return static_cast<double>(img.get(x, y));
  };

  HogVector hog;
  hog.cell_size = cs;
  hog.bins = cfg.bins;
  hog.cells_x = w / cs;
  hog.cells_y = h / cs;
  const double bin_width = 180.0 / cfg.bins;

  Eigen::ArrayXXd cells = Eigen::ArrayXXd::Zero(hog.cells_x * hog.cells_y, cfg.bins);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double gx = pix(x + 1, y) - pix(x - 1, y);
      const double gy = pix(x, y + 1) - pix(x, y - 1);
      if (gx == 0 && gy == 0) continue;
      const double mag = std::hypot(gx, gy);
      double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      deg = std::fmod(deg + 360.0, 180.0);
      const double pos = deg / bin_width;
      const double lo = std::floor(pos);
      const double frac = pos - lo;
      const int b0 = static_cast<int>(lo) % cfg.bins;
      const int b1 = (b0 + 1) % cfg.bins;
      const int cell = (y / cs) * hog.cells_x + (x / cs);
      cells(cell, b0) += mag * (1.0 - frac);
      cells(cell, b1) += mag * frac;
    }

  const int bx = hog.blocks_x(), by = hog.blocks_y(), len = hog.block_length();
  hog.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bx) * by * len);
  constexpr double kEps2 = 1e-12;
  for (int j = 0; j < by; ++j)
    for (int i = 0; i < bx; ++i) {
      Eigen::VectorXd block(len);
      int k = 0;
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx, ++k)
          block.segment(k * cfg.bins, cfg.bins) = cells.row((j + dy) * hog.cells_x + i + dx).transpose();
      block /= std::sqrt(block.squaredNorm() + kEps2);
      block = block.cwiseMin(0.2);
      block /= std::sqrt(block.squaredNorm() + kEps2);
      hog.values.segment((static_cast<Eigen::Index>(j) * bx + i) * len, len) = block;
    }
  return hog;
}

}  // namespace facade
