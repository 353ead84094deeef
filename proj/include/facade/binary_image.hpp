#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace facade {

/// Row-major {0,1} raster; rows index y (downwards), columns index x.
using BitRaster = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BinaryImage {
  BitRaster pixels;
  double pixel_size = 1.0;  ///< meters (or normalized units) per pixel

  BinaryImage() = default;
  BinaryImage(int width, int height, double pixel_size_ = 1.0)
      : pixels(BitRaster::Zero(height, width)), pixel_size(pixel_size_) {}

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
  bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < width() && y < height(); }
  bool at(int x, int y) const { return pixels(y, x) != 0; }
  /// Out-of-bounds reads as 0.
  std::uint8_t get(int x, int y) const { return inside(x, y) ? pixels(y, x) : std::uint8_t{0}; }
  void set(int x, int y, bool on = true) { pixels(y, x) = on ? 1 : 0; }
  Eigen::Index count() const { return (pixels != 0).count(); }

  bool operator==(const BinaryImage& o) const {
    return pixels.rows() == o.pixels.rows() && pixels.cols() == o.pixels.cols() && (pixels == o.pixels).all();
  }
};

}  // namespace facade
