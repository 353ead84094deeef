#include "facade/cloud_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace facade {
namespace {

static_assert(std::endian::native == std::endian::little, "PLY I/O assumes a little-endian host");

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

PointCloud from_vector(const std::vector<double>& xyz) {
  PointCloud cloud;
  cloud.points = Eigen::Map<const Points3<double>>(xyz.data(), 3, static_cast<Eigen::Index>(xyz.size() / 3));
  return cloud;
}

struct PlyProperty {
  std::string name;
  std::string type;
};

std::size_t type_size(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" || type == "float" ||
      type == "float32")
    return 4;
  if (type == "double" || type == "float64") return 8;
  return 0;
}

template <typename T>
double load_as(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return static_cast<double>(v);
}

double decode(const std::string& type, const char* p) {
  if (type == "char" || type == "int8") return load_as<std::int8_t>(p);
  if (type == "uchar" || type == "uint8") return load_as<std::uint8_t>(p);
  if (type == "short" || type == "int16") return load_as<std::int16_t>(p);
  if (type == "ushort" || type == "uint16") return load_as<std::uint16_t>(p);
  if (type == "int" || type == "int32") return load_as<std::int32_t>(p);
  if (type == "uint" || type == "uint32") return load_as<std::uint32_t>(p);
  if (type == "float" || type == "float32") return load_as<float>(p);
  return load_as<double>(p);
}

}  // namespace

PointCloud read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<double> xyz;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x, y, z;
    if (!(fields >> x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(path.string(), line_no, "expected three coordinates");
    }
    if (!(fields >> y >> z)) throw ParseError(path.string(), line_no, "expected three coordinates");
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw ParseError(path.string(), line_no, "non-finite coordinate");
    xyz.insert(xyz.end(), {x, y, z});
  }
  if (xyz.empty()) throw Error(path.string() + ": no points");
  return from_vector(xyz);
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw Error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < cloud.size(); ++i)
    std::fprintf(f, "%.17g %.17g %.17g\n", cloud.points(0, i), cloud.points(1, i), cloud.points(2, i));
  if (std::fclose(f) != 0) throw Error("cannot write " + path.string());
}

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::string file = path.string();

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") throw ParseError(file, 1, "missing 'ply' magic");
  std::string format;
  long long vertex_count = -1;
  bool in_vertex = false;
  bool vertex_seen = false;
  std::vector<PlyProperty> props;
  while (true) {
    if (!next_line()) throw ParseError(file, line_no, "unterminated header");
    std::istringstream tok(line);
    std::string key;
    tok >> key;
    if (key == "end_header") break;
    if (key == "format") {
      tok >> format;
    } else if (key == "element") {
      std::string name;
      long long count = 0;
      tok >> name >> count;
      in_vertex = (name == "vertex");
      if (in_vertex) {
        if (vertex_seen) throw ParseError(file, line_no, "duplicate vertex element");
        vertex_count = count;
        vertex_seen = true;
      } else if (!vertex_seen) {
        throw ParseError(file, line_no, "elements before 'vertex' are not supported");
      }
    } else if (key == "property" && in_vertex) {
      PlyProperty p;
      tok >> p.type;
      if (p.type == "list") throw ParseError(file, line_no, "list properties on vertices are not supported");
      tok >> p.name;
      if (type_size(p.type) == 0) throw ParseError(file, line_no, "unknown property type '" + p.type + "'");
      props.push_back(p);
    }
  }
  if (vertex_count <= 0) throw ParseError(file, line_no, "no vertices");

  int ix = -1, iy = -1, iz = -1;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (props[i].name == "x") ix = static_cast<int>(i);
    if (props[i].name == "y") iy = static_cast<int>(i);
    if (props[i].name == "z") iz = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0 || iz < 0) throw ParseError(file, line_no, "vertex element lacks x/y/z");

  std::vector<double> xyz(static_cast<std::size_t>(vertex_count) * 3);
  if (format == "binary_little_endian") {
    std::vector<std::size_t> offsets;
    std::size_t stride = 0;
    for (const auto& p : props) {
      offsets.push_back(stride);
      stride += type_size(p.type);
    }
    std::vector<char> record(stride);
    for (long long v = 0; v < vertex_count; ++v) {
      if (!in.read(record.data(), static_cast<std::streamsize>(stride)))
        throw ParseError(file, line_no, "truncated vertex data at vertex " + std::to_string(v));
      const int idx[3] = {ix, iy, iz};
      for (int c = 0; c < 3; ++c)
        xyz[static_cast<std::size_t>(v) * 3 + c] = decode(props[idx[c]].type, record.data() + offsets[idx[c]]);
    }
  } else if (format == "ascii") {
    for (long long v = 0; v < vertex_count; ++v) {
      if (!next_line()) throw ParseError(file, line_no, "truncated vertex data");
      std::istringstream tok(line);
      std::vector<double> values(props.size());
      for (auto& value : values)
        if (!(tok >> value)) throw ParseError(file, line_no, "malformed vertex line");
      xyz[static_cast<std::size_t>(v) * 3 + 0] = values[ix];
      xyz[static_cast<std::size_t>(v) * 3 + 1] = values[iy];
      xyz[static_cast<std::size_t>(v) * 3 + 2] = values[iz];
    }
  } else {
    throw ParseError(file, 2, "unsupported PLY format '" + format + "'");
  }
  for (double c : xyz)
    if (!std::isfinite(c)) throw Error(file + ": non-finite coordinate");
  return from_vector(xyz);
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "ply\nformat binary_little_endian 1.0\nelement vertex " << cloud.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  out.write(reinterpret_cast<const char*>(cloud.points.data()),
            static_cast<std::streamsize>(sizeof(double) * 3 * cloud.size()));
  if (!out) throw Error("cannot write " + path.string());
}

PointCloud read_cloud(const std::filesystem::path& path) {
  const auto ext = lower(path.extension().string());
  if (ext == ".ply") return read_ply(path);
  return read_xyz(path);
}

void write_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
  if (lower(path.extension().string()) == ".ply")
    write_ply(path, cloud);
  else
    write_xyz(path, cloud);
}

}  // namespace facade
