#pragma once

#include <string>
#include <utility>
#include <vector>

#include "facade/mesh.hpp"

namespace facade {

struct NamedMesh {
  std::string id;
  TriangleMesh mesh;
};

/// Four window CAD stand-ins in the x-z plane (depth along y), each an
/// extruded frame with "Frame" faces and a "Glass" pane: "arched",
/// "octagon", "rectangle", "rectangle_bars" (sorted by id).
std::vector<NamedMesh> synthetic_window_models();

/// Extruded ring between corresponding outer and inner polygons (x, z), plus
/// a glass pane filling the inner polygon.
TriangleMesh extrude_frame(const std::vector<Eigen::Vector2d>& outer, const std::vector<Eigen::Vector2d>& inner,
                           double depth);

/// Axis-aligned box appended to `mesh` with the given material.
void append_box(TriangleMesh& mesh, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, const std::string& material);

}  // namespace facade
