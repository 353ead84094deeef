#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "facade/point_cloud.hpp"
#include "facade/random.hpp"

namespace facade {

/// Indexed triangle mesh with one material tag per face.
template <typename Scalar>
struct TriangleMeshT {
  Points3<Scalar> vertices;
  Eigen::Matrix<int, 3, Eigen::Dynamic> faces;
  std::vector<std::string> face_material;

  Eigen::Index num_faces() const { return faces.cols(); }
  Eigen::Index num_vertices() const { return vertices.cols(); }

  Eigen::Matrix<Scalar, 3, 1> corner(Eigen::Index face, int k) const { return vertices.col(faces(k, face)); }

  Scalar face_area(Eigen::Index face) const {
    const auto a = corner(face, 0);
    return Scalar(0.5) * (corner(face, 1) - a).cross(corner(face, 2) - a).norm();
  }

  Scalar surface_area() const {
    Scalar total = 0;
    for (Eigen::Index f = 0; f < num_faces(); ++f) total += face_area(f);
    return total;
  }
};

using TriangleMesh = TriangleMeshT<double>;

inline constexpr const char* kDefaultMaterial = "default";

/// Wavefront OBJ. Polygons are fan-triangulated; faces before any `usemtl`
/// get the "default" tag. Throws ParseError with the offending line.
TriangleMesh load_obj(const std::filesystem::path& path);
TriangleMesh parse_obj(std::istream& in, const std::string& source_name);

/// Writes OBJ plus a sibling .mtl naming every material used.
void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

/// Case-insensitive substring test of `material` against each entry of `excluded`.
inline bool material_excluded(const std::string& material, const std::vector<std::string>& excluded) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  const std::string m = lower(material);
  for (const auto& e : excluded)
    if (!e.empty() && m.find(lower(e)) != std::string::npos) return true;
  return false;
}

/// Drops faces whose material matches `excluded`; unreferenced vertices are removed
/// and the rest re-indexed in their original order.
template <typename Scalar>
TriangleMeshT<Scalar> remove_materials(const TriangleMeshT<Scalar>& mesh, const std::vector<std::string>& excluded) {
  std::vector<Eigen::Index> kept;
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f)
    if (!material_excluded(mesh.face_material[static_cast<std::size_t>(f)], excluded)) kept.push_back(f);
  if (kept.empty()) throw Error("all geometry excluded");

  std::vector<int> remap(static_cast<std::size_t>(mesh.num_vertices()), -1);
  for (Eigen::Index f : kept)
    for (int k = 0; k < 3; ++k) remap[static_cast<std::size_t>(mesh.faces(k, f))] = 0;
  int next = 0;
  for (auto& r : remap)
    if (r == 0) r = next++;

  TriangleMeshT<Scalar> out;
  out.vertices.resize(3, next);
  for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v)
    if (remap[static_cast<std::size_t>(v)] >= 0) out.vertices.col(remap[static_cast<std::size_t>(v)]) = mesh.vertices.col(v);
  out.faces.resize(3, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (int k = 0; k < 3; ++k)
      out.faces(k, static_cast<Eigen::Index>(i)) = remap[static_cast<std::size_t>(mesh.faces(k, kept[i]))];
    out.face_material.push_back(mesh.face_material[static_cast<std::size_t>(kept[i])]);
  }
  return out;
}

struct SamplingConfig {
  /// Target spacing d in meters; the expected density is 1/d^2 points per m^2.
  double sampling_distance = 0.01;
  std::vector<std::string> excluded_materials;
  std::uint64_t seed = 0;

  bool operator==(const SamplingConfig&) const = default;
};

struct SamplingStats {
  std::size_t degenerate_faces = 0;
};

inline constexpr double kDegenerateArea = 1e-12;

/// Area-weighted uniform random surface samples: round(area / d^2) points,
/// each on a face drawn with probability proportional to its area.
template <typename Scalar>
PointCloudT<Scalar> sample_surface(const TriangleMeshT<Scalar>& mesh, const SamplingConfig& cfg,
                                   SamplingStats* stats = nullptr) {
  if (!(cfg.sampling_distance > 0)) throw Error("sampling distance must be positive");
  if (mesh.num_faces() == 0) throw Error("cannot sample an empty mesh");

  std::vector<Eigen::Index> faces;
  std::vector<double> cdf;
  double total = 0;
  std::size_t degenerate = 0;
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    const double a = static_cast<double>(mesh.face_area(f));
    if (!(a >= kDegenerateArea)) {
      ++degenerate;
      continue;
    }
    total += a;
    faces.push_back(f);
    cdf.push_back(total);
  }
  if (stats) stats->degenerate_faces = degenerate;
  if (faces.empty()) throw Error("mesh has no non-degenerate faces");

  const double d = cfg.sampling_distance;
  const auto count = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(total / (d * d))));

  Rng rng(cfg.seed);
  PointCloudT<Scalar> cloud;
  cloud.points.resize(3, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double pick = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), pick);
    if (it == cdf.end()) --it;
    const Eigen::Index f = faces[static_cast<std::size_t>(it - cdf.begin())];
    const Scalar s = static_cast<Scalar>(std::sqrt(uniform01(rng)));
    const Scalar t = static_cast<Scalar>(uniform01(rng));
    cloud.points.col(i) = (Scalar(1) - s) * mesh.corner(f, 0) + s * (Scalar(1) - t) * mesh.corner(f, 1) +
                          s * t * mesh.corner(f, 2);
  }
  return cloud;
}

/// Fallback spacing: bounding-box diagonal / 200, then clamped so the mesh
/// yields between `min_points` and `max_points` samples.
template <typename Scalar>
double auto_sampling_distance(const TriangleMeshT<Scalar>& mesh, double min_points = 5000, double max_points = 50000) {
  const double area = static_cast<double>(mesh.surface_area());
  if (!(area > 0)) throw Error("mesh has zero surface area");
  double d = static_cast<double>(bounding_box(mesh.vertices).diagonal()) / 200.0;
  const double n = area / (d * d);
  if (n < min_points) d = std::sqrt(area / min_points);
  if (n > max_points) d = std::sqrt(area / max_points);
  return d;
}

}  // namespace facade
