#pragma once

#include <filesystem>

#include "facade/point_cloud.hpp"

namespace facade {

/// ASCII "x y z" per line. Extra columns are ignored; '#' starts a comment.
PointCloud read_xyz(const std::filesystem::path& path);
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);

/// PLY vertex positions. Reads ascii and binary_little_endian with any scalar
/// property types; writes binary_little_endian with double x, y, z.
PointCloud read_ply(const std::filesystem::path& path);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);

/// Dispatches on extension (.xyz/.txt/.pts vs .ply). The cloud label is left empty.
PointCloud read_cloud(const std::filesystem::path& path);
void write_cloud(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace facade
