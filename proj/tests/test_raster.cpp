#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include "facade/raster.hpp"
#include "raster_oracles.hpp"
#include "test_util.hpp"

using namespace facade;

namespace {

BinaryImage from_rows(const std::vector<std::string>& rows) {
  BinaryImage img(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) img.set(x, y, rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#');
  return img;
}

PointCloud planar_cloud(std::uint64_t seed, int n = 3000) {
  // Asymmetric L-shaped blob in the XZ plane so every axis sign is well defined.
  Rng rng(seed);
  PointCloud c;
  c.points.resize(3, n);
  for (int i = 0; i < n; ++i) {
    double x = uniform01(rng), z = uniform01(rng) * 1.6;
    if (uniform01(rng) < 0.35) x = 0.2 * x, z = 0.3 * z;
    c.points.col(i) = Eigen::Vector3d(x, 0, z * z);
  }
  return c;
}

RasterConfig small_config() {
  RasterConfig cfg;
  cfg.image_long_side = 64;
  cfg.margin = 4;
  return cfg;
}

}  // namespace

TEST(ProjectFrontal, UnitSquareCorners) {
  PointCloud c;
  c.points.resize(3, 4);
  c.points << 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0;
  RasterConfig cfg;
  cfg.image_long_side = 2;
  cfg.margin = 0;
  const BinaryImage img = project_frontal(c, cfg);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.height(), 2);
  EXPECT_EQ(img.count(), 4);
}

TEST(ProjectFrontal, XzPlaneEqualsSameCloudRotatedIntoXy) {
  const PointCloud xz = planar_cloud(1);
  PointCloud xy = xz;
  const Eigen::Matrix3d to_xy = Eigen::AngleAxisd(-M_PI / 2, Eigen::Vector3d::UnitX()).toRotationMatrix();
  xy.points = to_xy * xz.points;
  ASSERT_LT(xy.points.row(2).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(project_frontal(xz, small_config()), project_frontal(xy, small_config()));
}

TEST(ProjectFrontal, InvariantUnderRigidMotion) {
  const PointCloud base = planar_cloud(2);
  const BinaryImage ref = project_frontal(base, small_config());
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Quaterniond q(standard_normal(rng), standard_normal(rng), standard_normal(rng), standard_normal(rng));
    PointCloud moved = base;
    moved.points = (q.normalized().toRotationMatrix() * base.points).colwise() + Eigen::Vector3d(3, -1, 2);
    const BinaryImage img = project_frontal(moved, small_config());
    // Pixel-level equality up to a few boundary bins flipped by rounding.
    EXPECT_LE((img.pixels != ref.pixels).count(), 3) << "trial " << trial;
  }
}

TEST(ProjectFrontal, LongerExtentIsVertical) {
  PointCloud c = planar_cloud(3);
  c.points.row(2) *= 0.3;  // now wider than tall
  const BinaryImage img = project_frontal(c, small_config());
  int rows = 0, cols = 0;
  for (int y = 0; y < img.height(); ++y) rows += img.pixels.row(y).maxCoeff() > 0;
  for (int x = 0; x < img.width(); ++x) cols += img.pixels.col(x).maxCoeff() > 0;
  EXPECT_GT(rows, cols);
  EXPECT_EQ(rows, 64 - 2 * 4);
}

TEST(ProjectFrontal, CollinearCloudRejected) {
  PointCloud c;
  c.points.resize(3, 20);
  for (int i = 0; i < 20; ++i) c.points.col(i) = Eigen::Vector3d(i, 2.0 * i, -i);
  EXPECT_THROW(project_frontal(c, small_config()), Error);
}

TEST(ProjectFrontal, AtLeastOnePixelAndInsideCanvas) {
  const BinaryImage img = project_frontal(planar_cloud(4), small_config());
  EXPECT_GT(img.count(), 0);
  EXPECT_EQ(img.pixels.topRows(4).count(), 0);
  EXPECT_EQ(img.pixels.bottomRows(4).count(), 0);
}

TEST(Dilate, RadiusZeroIsIdentity) {
  Rng rng(1);
  const BinaryImage img = test::random_shape(rng, 32, 32);
  EXPECT_EQ(dilate(img, 0), img);
}

TEST(Dilate, SinglePixelBecomesBlock) {
  BinaryImage img(7, 7);
  img.set(3, 3);
  const BinaryImage out = dilate(img, 1);
  EXPECT_EQ(out.count(), 9);
  for (int y = 2; y <= 4; ++y)
    for (int x = 2; x <= 4; ++x) EXPECT_TRUE(out.at(x, y));
}

TEST(Dilate, MatchesBruteForceAndIsExtensiveAndMonotone) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const BinaryImage img = test::random_shape(rng, 32, 32);
    BinaryImage prev = img;
    for (int r = 0; r <= 3; ++r) {
      const BinaryImage out = dilate(img, r);
      EXPECT_EQ(out, test::brute_dilate(img, r));
      EXPECT_TRUE(test::is_subset(img, out));
      EXPECT_TRUE(test::is_subset(prev, out));
      EXPECT_GE(out.count(), prev.count());
      prev = out;
    }
  }
}

TEST(LaplaceEdges, ZeroImage) { EXPECT_EQ(laplace_edges(BinaryImage(9, 9)).count(), 0); }

TEST(LaplaceEdges, SolidBlockKeepsBoundary) {
  BinaryImage img(5, 5);
  img.pixels.setOnes();
  const BinaryImage out = laplace_edges(img);
  EXPECT_EQ(out.count(), 16);
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) EXPECT_FALSE(out.at(x, y));
}

TEST(LaplaceEdges, SinglePixelGivesCross) {
  BinaryImage img(5, 5);
  img.set(2, 2);
  const BinaryImage expected = from_rows({".....", "..#..", ".###.", "..#..", "....."});
  EXPECT_EQ(laplace_edges(img), expected);
}

TEST(LaplaceEdges, BruteForceConvolutionAndClosure) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const BinaryImage img = test::random_shape(rng, 32, 32);
    const BinaryImage out = laplace_edges(img);
    BinaryImage closure(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) {
        const int r = img.get(x - 1, y) + img.get(x + 1, y) + img.get(x, y - 1) + img.get(x, y + 1) - 4 * img.get(x, y);
        ASSERT_EQ(out.at(x, y), r != 0);
        closure.set(x, y, img.get(x, y) || img.get(x - 1, y) || img.get(x + 1, y) || img.get(x, y - 1) || img.get(x, y + 1));
      }
    EXPECT_TRUE(test::is_subset(out, closure));
  }
}

TEST(LaplaceEdges, ConvexShapeHasFewerEdgeThanArea) {
  BinaryImage img(40, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x)
      if ((x - 20) * (x - 20) + (y - 20) * (y - 20) <= 150) img.set(x, y);
  EXPECT_LT(laplace_edges(img).count(), img.count());
}

TEST(TraceContours, RectangleClockwiseFromFirstPixel) {
  const BinaryImage img = from_rows({"......", ".####.", ".####.", ".####.", "......"});
  const auto contours = trace_contours(img);
  ASSERT_EQ(contours.size(), 1u);
  const Polyline& c = contours[0];
  EXPECT_EQ(c.size(), 10u);
  EXPECT_EQ(c[0], Eigen::Vector2i(1, 1));
  EXPECT_EQ(c[1], Eigen::Vector2i(2, 1));  // clockwise on screen: along the top edge first
}

TEST(TraceContours, ComponentsAndSinglePixels) {
  const BinaryImage img = from_rows({"#....", ".....", "..##.", "..##.", "#...."});
  const auto contours = trace_contours(img);
  ASSERT_EQ(contours.size(), 3u);
  EXPECT_EQ(contours[0].size(), 1u);
  EXPECT_EQ(contours[1].size(), 4u);
  EXPECT_EQ(contours[2].size(), 1u);
}

TEST(DouglasPeucker, RectangleContourCollapsesToCorners) {
  BinaryImage img(40, 30);
  for (int y = 5; y < 25; ++y)
    for (int x = 3; x < 35; ++x) img.set(x, y);
  const auto contours = trace_contours(img);
  ASSERT_EQ(contours.size(), 1u);
  const Polyline simplified = douglas_peucker_closed(contours[0], 1.5);
  ASSERT_EQ(simplified.size(), 4u);
  for (const auto& v : simplified) {
    EXPECT_TRUE(v.x() == 3 || v.x() == 34);
    EXPECT_TRUE(v.y() == 5 || v.y() == 24);
  }
}

TEST(DouglasPeucker, SmallEpsilonKeepsEverything) {
  const Polyline zigzag = {{0, 0}, {2, 2}, {4, 0}, {6, 2}, {8, 0}, {10, 2}};
  EXPECT_EQ(douglas_peucker(zigzag, 0.5), zigzag);
}

TEST(DouglasPeucker, JitteredLineBecomesSegment) {
  Rng rng(4);
  Polyline line;
  for (int x = 0; x <= 60; ++x) line.emplace_back(x, 10 + static_cast<int>(uniform_index(rng, 3)) - 1);
  line.front().y() = 10;
  line.back().y() = 10;
  double worst = 0;
  for (const auto& p : line)
    worst = std::max(worst, test::point_segment_distance(p.cast<double>(), {0, 10}, {60, 10}));
  ASSERT_LE(worst, 1.5);
  const Polyline out = douglas_peucker(line, 1.5);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.front(), line.front());
  EXPECT_EQ(out.back(), line.back());
}

TEST(DouglasPeucker, VerticesAreOriginalAndHausdorffBounded) {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const BinaryImage img = test::random_shape(rng, 32, 32);
    for (const auto& contour : trace_contours(img)) {
      for (double eps : {0.75, 1.5, 3.0}) {
        const Polyline s = douglas_peucker_closed(contour, eps);
        for (const auto& v : s) EXPECT_NE(std::find(contour.begin(), contour.end(), v), contour.end());
        EXPECT_LE(test::hausdorff(s, contour, true), eps + 1e-9);
      }
    }
  }
}

TEST(DouglasPeucker, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(douglas_peucker({{0, 0}, {1, 1}, {2, 0}}, 0.0), Error);
  EXPECT_THROW(simplify_contours(BinaryImage(4, 4), -1.0), Error);
}

TEST(SimplifyContours, RectangleRedrawnExactly) {
  BinaryImage img(20, 20);
  for (int y = 4; y < 15; ++y)
    for (int x = 6; x < 13; ++x) img.set(x, y);
  BinaryImage outline(20, 20);
  for (int y = 4; y < 15; ++y)
    for (int x = 6; x < 13; ++x) outline.set(x, y, x == 6 || x == 12 || y == 4 || y == 14);
  EXPECT_EQ(simplify_contours(img, 1.5), outline);
}

TEST(RasterChain, StagesAndPng) {
  const auto dir = test::scratch_dir();
  const RasterStages s = raster_chain(planar_cloud(6), small_config());
  EXPECT_TRUE(test::is_subset(s.projected, s.dilated));
  EXPECT_EQ(&s.stage(FeatureStage::edges), &s.edges);
  EXPECT_EQ(parse_feature_stage("simplified"), FeatureStage::simplified);
  EXPECT_EQ(to_string(FeatureStage::dilated), "dilated");
  EXPECT_THROW(parse_feature_stage("blurred"), Error);
  write_png(dir / "p.png", s.dilated);
  const std::string bytes = test::read_file(dir / "p.png");
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(bytes.substr(1, 3), "PNG");
}
