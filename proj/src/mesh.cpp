#include "facade/mesh.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace facade {
namespace {

// Resolves a 1-based (or negative, relative) OBJ index against `count` entries.
int resolve_index(const std::string& token, std::size_t count, const std::string& src, std::size_t line) {
  const std::string head = token.substr(0, token.find('/'));
  long long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoll(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw ParseError(src, line, "bad face index '" + token + "'");
  }
  if (idx < 0) idx += static_cast<long long>(count) + 1;
  if (idx < 1 || idx > static_cast<long long>(count))
    throw ParseError(src, line, "face index " + head + " out of range");
  return static_cast<int>(idx - 1);
}

}  // namespace

TriangleMesh parse_obj(std::istream& in, const std::string& source_name) {
  std::vector<double> verts;
  std::vector<int> tris;
  std::vector<std::string> materials;
  std::string current = kDefaultMaterial;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::string key;
    if (!(tok >> key)) continue;
    if (key == "v") {
      double x, y, z;
      if (!(tok >> x >> y >> z)) throw ParseError(source_name, line_no, "vertex needs three coordinates");
      if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw ParseError(source_name, line_no, "non-finite vertex");
      verts.insert(verts.end(), {x, y, z});
    } else if (key == "f") {
      std::vector<int> poly;
      std::string t;
      while (tok >> t) poly.push_back(resolve_index(t, verts.size() / 3, source_name, line_no));
      if (poly.size() < 3) throw ParseError(source_name, line_no, "face needs at least three vertices");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        tris.insert(tris.end(), {poly[0], poly[k], poly[k + 1]});
        materials.push_back(current);
      }
    } else if (key == "usemtl") {
      std::string name;
      std::getline(tok >> std::ws, name);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      if (name.empty()) throw ParseError(source_name, line_no, "usemtl without a name");
      current = name;
    }
    // vt, vn, g, o, s, mtllib: not needed for sampling.
  }
  if (tris.empty()) throw Error(source_name + ": mesh has zero faces");

  TriangleMesh mesh;
  mesh.vertices = Eigen::Map<const Points3<double>>(verts.data(), 3, static_cast<Eigen::Index>(verts.size() / 3));
  mesh.faces = Eigen::Map<const Eigen::Matrix<int, 3, Eigen::Dynamic>>(tris.data(), 3,
                                                                      static_cast<Eigen::Index>(tris.size() / 3));
  mesh.face_material = std::move(materials);
  return mesh;
}

TriangleMesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_obj(in, path.string());
}

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  auto mtl_path = path;
  mtl_path.replace_extension(".mtl");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out.precision(17);
  out << "mtllib " << mtl_path.filename().string() << "\n";
  for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v)
    out << "v " << mesh.vertices(0, v) << ' ' << mesh.vertices(1, v) << ' ' << mesh.vertices(2, v) << "\n";
  std::string current;
  for (Eigen::Index f = 0; f < mesh.num_faces(); ++f) {
    const auto& m = mesh.face_material[static_cast<std::size_t>(f)];
    if (m != current) {
      out << "usemtl " << m << "\n";
      current = m;
    }
    out << "f " << mesh.faces(0, f) + 1 << ' ' << mesh.faces(1, f) + 1 << ' ' << mesh.faces(2, f) + 1 << "\n";
  }
  if (!out) throw Error("cannot write " + path.string());

  std::set<std::string> names(mesh.face_material.begin(), mesh.face_material.end());
  std::ofstream mtl(mtl_path);
  for (const auto& name : names) {
    const bool glass = material_excluded(name, {"glass"});
    mtl << "newmtl " << name << "\nKd 0.8 0.8 0.8\nd " << (glass ? "0.2" : "1.0") << "\n\n";
  }
}

}  // namespace facade
