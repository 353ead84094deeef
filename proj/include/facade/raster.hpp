#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "facade/binary_image.hpp"
#include "facade/point_cloud.hpp"

namespace facade {

struct RasterConfig {
  int image_long_side = 256;
  int margin = 24;  ///< empty border kept around the projected shape, pixels
  int dilation_radius = 1;
  double dp_epsilon = 1.5;

  bool operator==(const RasterConfig&) const = default;
};

/// Which stage of the image chain feeds feature extraction.
enum class FeatureStage { projected, dilated, edges, simplified };

FeatureStage parse_feature_stage(const std::string& s);
std::string to_string(FeatureStage s);

/// Principal frame of a cloud: columns are unit axes sorted by decreasing variance.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> principal_axes(const Points3<Scalar>& points, Eigen::Matrix<Scalar, 3, 1>* variances = nullptr) {
  const Points3<Scalar> centered = points.colwise() - points.rowwise().mean();
  const Eigen::Matrix<Scalar, 3, 3> cov = centered * centered.transpose() / static_cast<Scalar>(points.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> solver(cov);
  Eigen::Matrix<Scalar, 3, 3> axes = solver.eigenvectors().rowwise().reverse();
  if (variances) *variances = solver.eigenvalues().reverse();

  // Fix each axis sign by the third moment of the projections so that rigidly
  // moved copies of a cloud land in the same frame. Symmetric distributions
  // fall back to a positive dominant component.
  for (int a = 0; a < 2; ++a) {
    const auto proj = (axes.col(a).transpose() * centered).array().eval();
    const Scalar m3 = proj.cube().sum();
    const Scalar scale = proj.abs().cube().sum();
    bool flip;
    if (std::abs(m3) > Scalar(1e-9) * scale) {
      flip = m3 < 0;
    } else {
      Eigen::Index k;
      axes.col(a).cwiseAbs().maxCoeff(&k);
      flip = axes(k, a) < 0;
    }
    if (flip) axes.col(a) = -axes.col(a);
  }
  axes.col(2) = axes.col(0).cross(axes.col(1));
  return axes;
}

/// Orthographic projection onto the plane of the two dominant principal axes.
/// The canvas is square (image_long_side pixels); the longer in-plane extent
/// runs vertically and fills the canvas minus `margin`, the shorter one is
/// centred. A pixel is 1 iff at least one point falls into it.
template <typename Scalar>
BinaryImage project_frontal(const PointCloudT<Scalar>& cloud, const RasterConfig& cfg) {
  if (cloud.size() < 3) throw Error("projection needs at least three points");
  const int side = cfg.image_long_side;
  const int content = side - 2 * cfg.margin;
  if (content < 1) throw Error("raster margin leaves no drawable area");

  Eigen::Matrix<Scalar, 3, 1> var;
  const auto axes = principal_axes(cloud.points, &var);
  if (!(var(1) > Scalar(1e-12) * std::max(var(0), Scalar(1e-300)))) throw Error("collinear cloud cannot be projected");

  const Eigen::Matrix<Scalar, 2, Eigen::Dynamic> plane = axes.leftCols(2).transpose() * cloud.points;
  const Eigen::Matrix<Scalar, 2, 1> lo = plane.rowwise().minCoeff();
  const Eigen::Matrix<Scalar, 2, 1> hi = plane.rowwise().maxCoeff();
  const Eigen::Matrix<Scalar, 2, 1> ext = hi - lo;
  // Vertical axis: the longer extent; first principal axis on ties.
  const int vert = ext(1) > ext(0) ? 1 : 0;
  const int horiz = 1 - vert;
  const double pixel = static_cast<double>(ext(vert)) / content;

  BinaryImage img(side, side, pixel);
  const double pad_x = (content - static_cast<double>(ext(horiz)) / pixel) / 2.0;
  auto bin = [&](double offset, double pad) {
    const long long c = static_cast<long long>(std::floor(offset / pixel + pad));
    return static_cast<int>(std::clamp<long long>(c, 0, content - 1)) + cfg.margin;
  };
  for (Eigen::Index i = 0; i < plane.cols(); ++i) {
    const int x = bin(static_cast<double>(plane(horiz, i) - lo(horiz)), pad_x);
    const int y = bin(static_cast<double>(hi(vert) - plane(vert, i)), 0.0);
    img.set(x, y);
  }
  return img;
}

/// Dilation with a (2r+1)x(2r+1) square structuring element.
BinaryImage dilate(const BinaryImage& img, int radius);

/// 4-neighbour Laplacian on the {0,1} image with zero padding; a pixel is set
/// iff the response is nonzero.
BinaryImage laplace_edges(const BinaryImage& img);

using Polyline = std::vector<Eigen::Vector2i>;

/// Outer boundary of every 8-connected component (Moore-neighbour tracing), as
/// closed pixel polylines in clockwise order, components in raster order of
/// their first pixel.
std::vector<Polyline> trace_contours(const BinaryImage& img);

/// Douglas-Peucker on an open polyline; endpoints are always kept.
Polyline douglas_peucker(const Polyline& line, double epsilon);

/// Douglas-Peucker on a closed polyline, split at the first vertex and the
/// vertex farthest from it.
Polyline douglas_peucker_closed(const Polyline& ring, double epsilon);

/// Bresenham rasterization of a polyline (closed when `closed`).
void draw_polyline(BinaryImage& img, const Polyline& line, bool closed);

/// Trace contours, simplify each with Douglas-Peucker and re-rasterize.
BinaryImage simplify_contours(const BinaryImage& img, double epsilon);

struct RasterStages {
  BinaryImage projected, dilated, edges, simplified;

  const BinaryImage& stage(FeatureStage s) const;
};

/// project -> dilate -> Laplace -> Douglas-Peucker.
template <typename Scalar>
RasterStages raster_chain(const PointCloudT<Scalar>& cloud, const RasterConfig& cfg) {
  RasterStages out;
  out.projected = project_frontal(cloud, cfg);
  out.dilated = dilate(out.projected, cfg.dilation_radius);
  out.edges = laplace_edges(out.dilated);
  out.simplified = simplify_contours(out.edges, cfg.dp_epsilon);
  return out;
}

/// 8-bit grayscale PNG, set pixels as 255.
void write_png(const std::filesystem::path& path, const BinaryImage& img);

}  // namespace facade
