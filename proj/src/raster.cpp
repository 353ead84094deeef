#include "facade/raster.hpp"

#include <png.h>

#include <array>
#include <cstdio>
#include <cstdlib>

namespace facade {
namespace {

// Clockwise on screen (y down), starting west.
const std::array<Eigen::Vector2i, 8> kRing = {{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int ring_index(const Eigen::Vector2i& d) {
  for (int i = 0; i < 8; ++i)
    if (kRing[static_cast<std::size_t>(i)] == d) return i;
  return 0;
}

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

FeatureStage parse_feature_stage(const std::string& s) {
  if (s == "projected") return FeatureStage::projected;
  if (s == "dilated") return FeatureStage::dilated;
  if (s == "edges") return FeatureStage::edges;
  if (s == "simplified") return FeatureStage::simplified;
  throw Error("unknown feature stage '" + s + "'");
}

std::string to_string(FeatureStage s) {
  switch (s) {
    case FeatureStage::projected: return "projected";
    case FeatureStage::dilated: return "dilated";
    case FeatureStage::edges: return "edges";
    case FeatureStage::simplified: return "simplified";
  }
  return "dilated";
}

const BinaryImage& RasterStages::stage(FeatureStage s) const {
  switch (s) {
    case FeatureStage::projected: return projected;
    case FeatureStage::dilated: return dilated;
    case FeatureStage::edges: return edges;
    case FeatureStage::simplified: return simplified;
  }
  return dilated;
}

BinaryImage dilate(const BinaryImage& img, int radius) {
  if (radius < 0) throw Error("dilation radius must be >= 0");
  if (radius == 0) return img;
  const int w = img.width(), h = img.height();
  // Separable: horizontal max, then vertical max.
  BitRaster rows = BitRaster::Zero(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (img.pixels(y, x))
        for (int dx = std::max(0, x - radius); dx <= std::min(w - 1, x + radius); ++dx) rows(y, dx) = 1;
  BinaryImage out(w, h, img.pixel_size);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (rows(y, x))
        for (int dy = std::max(0, y - radius); dy <= std::min(h - 1, y + radius); ++dy) out.pixels(dy, x) = 1;
  return out;
}

BinaryImage laplace_edges(const BinaryImage& img) {
  BinaryImage out(img.width(), img.height(), img.pixel_size);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const int response = img.get(x - 1, y) + img.get(x + 1, y) + img.get(x, y - 1) + img.get(x, y + 1) - 4 * img.get(x, y);
      if (response != 0) out.set(x, y);
    }
  return out;
}

std::vector<Polyline> trace_contours(const BinaryImage& img) {
  const int w = img.width(), h = img.height();
  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> label =
      Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(h, w, -1);
  std::vector<Polyline> contours;
  std::vector<Eigen::Vector2i> stack;

  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (!img.at(x0, y0) || label(y0, x0) >= 0) continue;
      const int id = static_cast<int>(contours.size());

      // Flood the component so its other pixels are not restarted.
      std::size_t size = 0;
      stack.assign(1, {x0, y0});
      label(y0, x0) = id;
      while (!stack.empty()) {
        const Eigen::Vector2i p = stack.back();
        stack.pop_back();
        ++size;
        for (const auto& d : kRing) {
          const Eigen::Vector2i q = p + d;
          if (img.inside(q.x(), q.y()) && img.at(q.x(), q.y()) && label(q.y(), q.x()) < 0) {
            label(q.y(), q.x()) = id;
            stack.push_back(q);
          }
        }
      }

      // Moore-neighbour trace from the first raster pixel; its west neighbour is background.
      const Eigen::Vector2i start{x0, y0};
      Polyline contour{start};
      Eigen::Vector2i p = start;
      int enter = 0;
      Eigen::Vector2i second{-1, -1};
      const std::size_t guard = 8 * size + 16;
      for (std::size_t step = 0; step < guard; ++step) {
        int found = -1;
        for (int i = 0; i < 8; ++i) {
          const int d = (enter + i) % 8;
          const Eigen::Vector2i q = p + kRing[static_cast<std::size_t>(d)];
          if (img.inside(q.x(), q.y()) && img.at(q.x(), q.y())) {
            found = d;
            break;
          }
        }
        if (found < 0) break;  // isolated pixel
        const Eigen::Vector2i q = p + kRing[static_cast<std::size_t>(found)];
        const Eigen::Vector2i back = p + kRing[static_cast<std::size_t>((found + 7) % 8)];
        if (p == start && contour.size() > 1 && q == second) break;
        if (contour.size() == 1) second = q;
        contour.push_back(q);
        p = q;
        enter = ring_index(back - q);
      }
      if (contour.size() > 1 && contour.back() == start) contour.pop_back();
      contours.push_back(std::move(contour));
    }
  return contours;
}

Polyline douglas_peucker(const Polyline& line, double epsilon) {
  if (!(epsilon > 0)) throw Error("Douglas-Peucker epsilon must be positive");
  if (line.size() <= 2) return line;
  std::vector<char> keep(line.size(), 0);
  keep.front() = keep.back() = 1;
  std::vector<std::pair<std::size_t, std::size_t>> spans{{0, line.size() - 1}};
  while (!spans.empty()) {
    const auto [a, b] = spans.back();
    spans.pop_back();
    double worst = -1;
    std::size_t at = a;
    for (std::size_t i = a + 1; i < b; ++i) {
      const double dist = segment_distance(line[i].cast<double>(), line[a].cast<double>(), line[b].cast<double>());
      if (dist > worst) {
        worst = dist;
        at = i;
      }
    }
    if (worst > epsilon) {
      keep[at] = 1;
      spans.emplace_back(a, at);
      spans.emplace_back(at, b);
    }
  }
  Polyline out;
  for (std::size_t i = 0; i < line.size(); ++i)
    if (keep[i]) out.push_back(line[i]);
  return out;
}

Polyline douglas_peucker_closed(const Polyline& ring, double epsilon) {
  if (!(epsilon > 0)) throw Error("Douglas-Peucker epsilon must be positive");
  if (ring.size() <= 2) return ring;
  std::size_t far = 0;
  int best = -1;
  for (std::size_t i = 1; i < ring.size(); ++i) {
    const int d2 = (ring[i] - ring[0]).squaredNorm();
    if (d2 > best) {
      best = d2;
      far = i;
    }
  }
  if (best == 0) return {ring[0]};
  const Polyline first(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(far) + 1);
  Polyline second(ring.begin() + static_cast<std::ptrdiff_t>(far), ring.end());
  second.push_back(ring[0]);
  Polyline out = douglas_peucker(first, epsilon);
  const Polyline tail = douglas_peucker(second, epsilon);
  out.insert(out.end(), tail.begin() + 1, tail.end() - 1);
  return out;
}

void draw_polyline(BinaryImage& img, const Polyline& line, bool closed) {
  auto plot = [&](int x, int y) {
    if (img.inside(x, y)) img.set(x, y);
  };
  auto segment = [&](Eigen::Vector2i a, const Eigen::Vector2i& b) {
    const int dx = std::abs(b.x() - a.x()), sx = a.x() < b.x() ? 1 : -1;
    const int dy = -std::abs(b.y() - a.y()), sy = a.y() < b.y() ? 1 : -1;
    int err = dx + dy;
    while (true) {
      plot(a.x(), a.y());
      if (a == b) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        a.x() += sx;
      }
      if (e2 <= dx) {
        err += dx;
        a.y() += sy;
      }
    }
  };
  if (line.empty()) return;
  if (line.size() == 1) plot(line[0].x(), line[0].y());
  for (std::size_t i = 0; i + 1 < line.size(); ++i) segment(line[i], line[i + 1]);
  if (closed && line.size() > 2) segment(line.back(), line.front());
}

BinaryImage simplify_contours(const BinaryImage& img, double epsilon) {
  if (!(epsilon > 0)) throw Error("Douglas-Peucker epsilon must be positive");
  BinaryImage out(img.width(), img.height(), img.pixel_size);
  for (const auto& contour : trace_contours(img)) draw_polyline(out, douglas_peucker_closed(contour, epsilon), true);
  return out;
}

void write_png(const std::filesystem::path& path, const BinaryImage& img) {
  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw Error("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw Error("PNG encoding failed for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(img.width()));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) row[static_cast<std::size_t>(x)] = img.at(x, y) ? 255 : 0;
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace facade
