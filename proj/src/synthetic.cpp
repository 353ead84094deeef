#include "facade/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace facade {
namespace {

constexpr double kFrame = 0.08;
constexpr double kDepth = 0.10;
constexpr double kBar = 0.05;

struct MeshBuilder {
  std::vector<Eigen::Vector3d> verts;
  std::vector<Eigen::Vector3i> tris;
  std::vector<std::string> mats;

  int vertex(const Eigen::Vector3d& v) {
    verts.push_back(v);
    return static_cast<int>(verts.size()) - 1;
  }
  void tri(int a, int b, int c, const std::string& m) {
    tris.emplace_back(a, b, c);
    mats.push_back(m);
  }
  void quad(int a, int b, int c, int d, const std::string& m) {
    tri(a, b, c, m);
    tri(a, c, d, m);
  }

  void append_to(TriangleMesh& mesh) const {
    const auto base = static_cast<int>(mesh.num_vertices());
    const auto nv = mesh.num_vertices(), nf = mesh.num_faces();
    mesh.vertices.conservativeResize(3, nv + static_cast<Eigen::Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) mesh.vertices.col(nv + static_cast<Eigen::Index>(i)) = verts[i];
    mesh.faces.conservativeResize(3, nf + static_cast<Eigen::Index>(tris.size()));
    for (std::size_t i = 0; i < tris.size(); ++i)
      mesh.faces.col(nf + static_cast<Eigen::Index>(i)) = tris[i].array() + base;
    mesh.face_material.insert(mesh.face_material.end(), mats.begin(), mats.end());
  }
};

Eigen::Vector3d at(const Eigen::Vector2d& p, double y) { return {p.x(), y, p.y()}; }

std::vector<Eigen::Vector2d> rectangle(double x0, double z0, double x1, double z1) {
  return {{x0, z0}, {x1, z0}, {x1, z1}, {x0, z1}};
}

// Straight jambs up to `spring`, then a semicircle of `segments` pieces.
std::vector<Eigen::Vector2d> arch(double half_width, double bottom, double spring, int segments) {
  std::vector<Eigen::Vector2d> pts{{-half_width, bottom}, {half_width, bottom}};
  for (int i = 0; i <= segments; ++i) {
    const double a = std::numbers::pi * i / segments;
    pts.emplace_back(half_width * std::cos(a), spring + half_width * std::sin(a));
  }
  return pts;
}

std::vector<Eigen::Vector2d> octagon(double rx, double rz, double cz) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < 8; ++i) {
    const double a = std::numbers::pi / 8 + i * std::numbers::pi / 4;
    pts.emplace_back(rx * std::cos(a), cz + rz * std::sin(a));
  }
  return pts;
}

}  // namespace

TriangleMesh extrude_frame(const std::vector<Eigen::Vector2d>& outer, const std::vector<Eigen::Vector2d>& inner,
                           double depth) {
  if (outer.size() != inner.size() || outer.size() < 3) throw Error("frame polygons must match and have >= 3 vertices");
  MeshBuilder b;
  const std::size_t k = outer.size();
  std::vector<int> of, ob, inf, inb;
  for (std::size_t i = 0; i < k; ++i) {
    of.push_back(b.vertex(at(outer[i], 0)));
    ob.push_back(b.vertex(at(outer[i], depth)));
    inf.push_back(b.vertex(at(inner[i], 0)));
    inb.push_back(b.vertex(at(inner[i], depth)));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    b.quad(of[i], of[j], inf[j], inf[i], "Frame");  // front
    b.quad(ob[i], inb[i], inb[j], ob[j], "Frame");  // back
    b.quad(of[i], ob[i], ob[j], of[j], "Frame");    // outer wall
    b.quad(inf[i], inf[j], inb[j], inb[i], "Frame");  // reveal
  }
  std::vector<int> pane;
  for (const auto& p : inner) pane.push_back(b.vertex(at(p, depth / 2)));
  for (std::size_t i = 1; i + 1 < k; ++i) b.tri(pane[0], pane[i], pane[i + 1], "Glass");

  TriangleMesh mesh;
  mesh.vertices.resize(3, 0);
  mesh.faces.resize(3, 0);
  b.append_to(mesh);
  return mesh;
}

void append_box(TriangleMesh& mesh, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, const std::string& material) {
  MeshBuilder b;
  int v[8];
  for (int i = 0; i < 8; ++i)
    v[i] = b.vertex({(i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(), (i & 4) ? hi.z() : lo.z()});
  b.quad(v[0], v[1], v[3], v[2], material);
  b.quad(v[4], v[6], v[7], v[5], material);
  b.quad(v[0], v[4], v[5], v[1], material);
  b.quad(v[2], v[3], v[7], v[6], material);
  b.quad(v[0], v[2], v[6], v[4], material);
  b.quad(v[1], v[5], v[7], v[3], material);
  b.append_to(mesh);
}

std::vector<NamedMesh> synthetic_window_models() {
  std::vector<NamedMesh> models;

  const double hw = 0.5;
  models.push_back({"arched", extrude_frame(arch(hw, 0.0, 1.1, 24), arch(hw - kFrame, kFrame, 1.1, 24), kDepth)});

  const double rx = 0.5, rz = 0.7;
  const double inset = kFrame / std::cos(std::numbers::pi / 8);
  models.push_back({"octagon", extrude_frame(octagon(rx, rz, rz), octagon(rx - inset, rz - inset, rz), kDepth)});

  const double w = 1.0, h = 1.4;
  const auto outer = rectangle(-w / 2, 0, w / 2, h);
  const auto inner = rectangle(-w / 2 + kFrame, kFrame, w / 2 - kFrame, h - kFrame);
  models.push_back({"rectangle", extrude_frame(outer, inner, kDepth)});

  TriangleMesh bars = extrude_frame(outer, inner, kDepth);
  const double y0 = kDepth * 0.25, y1 = kDepth * 0.75;
  append_box(bars, {-kBar / 2, y0, kFrame}, {kBar / 2, y1, h - kFrame}, "Frame");
  append_box(bars, {-w / 2 + kFrame, y0, 0.9 - kBar / 2}, {w / 2 - kFrame, y1, 0.9 + kBar / 2}, "Frame");
  models.push_back({"rectangle_bars", std::move(bars)});
  return models;
}

}  // namespace facade
