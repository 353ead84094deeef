#include "facade/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "facade/json_out.hpp"

namespace facade {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw Error("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw Error("'" + key + "' expects an integer, got '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error("'" + key + "' expects an unsigned integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error("'" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ",") + i;
  return out;
}

}  // namespace

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = unquote(raw);
  const std::string models_prefix = "sampling.models.";
  if (key.rfind(models_prefix, 0) == 0) {
    cfg.model_sampling_distance[key.substr(models_prefix.size())] = to_double(key, v);
  } else if (key == "master_seed") {
    cfg.master_seed = to_u64(key, v);
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(to_int(key, v));
  } else if (key == "sampling.distance") {
    cfg.sampling.sampling_distance = to_double(key, v);
  } else if (key == "sampling.excluded_materials") {
    cfg.sampling.excluded_materials = split_list(v);
  } else if (key == "prep.voxel_size") {
    cfg.prep.voxel_size = to_double(key, v);
  } else if (key == "prep.outlier_neighbors_k") {
    cfg.prep.outlier_neighbors_k = static_cast<int>(to_int(key, v));
  } else if (key == "prep.outlier_std_ratio_base") {
    cfg.prep.outlier_std_ratio_base = to_double(key, v);
  } else if (key == "prep.reference_height") {
    cfg.prep.reference_height = to_double(key, v);
  } else if (key == "raster.image_long_side") {
    cfg.raster.image_long_side = static_cast<int>(to_int(key, v));
  } else if (key == "raster.margin") {
    cfg.raster.margin = static_cast<int>(to_int(key, v));
  } else if (key == "raster.dilation_radius") {
    cfg.raster.dilation_radius = static_cast<int>(to_int(key, v));
  } else if (key == "raster.dp_epsilon") {
    cfg.raster.dp_epsilon = to_double(key, v);
  } else if (key == "features.kind") {
    if (v != "orb" && v != "orb+hog") throw Error("'features.kind' must be orb or orb+hog");
    cfg.features.use_hog = v == "orb+hog";
  } else if (key == "features.dense") {
    cfg.features.dense = to_bool(key, v);
  } else if (key == "features.stride") {
    cfg.features.dense_stride = static_cast<int>(to_int(key, v));
  } else if (key == "features.stage") {
    cfg.features.stage = parse_feature_stage(v);
  } else if (key == "features.max_keypoints") {
    cfg.features.max_keypoints = static_cast<int>(to_int(key, v));
  } else if (key == "features.fast_threshold") {
    cfg.features.fast_threshold = static_cast<int>(to_int(key, v));
  } else if (key == "features.hog_cell_size") {
    cfg.features.hog.cell_size = static_cast<int>(to_int(key, v));
  } else if (key == "features.hog_bins") {
    cfg.features.hog.bins = static_cast<int>(to_int(key, v));
  } else if (key == "codebook.clusters") {
    cfg.clusters = static_cast<int>(to_int(key, v));
  } else if (key == "codebook.metric") {
    cfg.cluster_metric = parse_cluster_metric(v);
  } else if (key == "codebook.hog_weight") {
    cfg.hog_weight = to_double(key, v);
  } else if (key == "matching.distance") {
    cfg.distance = parse_distance(v);
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

std::string emit_config(const PipelineConfig& c) {
  std::ostringstream o;
  o << "master_seed = " << c.master_seed << "\n";
  o << "jobs = " << c.jobs << "\n";
  o << "\n[sampling]\n";
  o << "distance = " << format_double(c.sampling.sampling_distance) << "\n";
  o << "excluded_materials = " << quote(join_list(c.sampling.excluded_materials)) << "\n";
  if (!c.model_sampling_distance.empty()) {
    o << "\n[sampling.models]\n";
    for (const auto& [id, d] : c.model_sampling_distance) o << id << " = " << format_double(d) << "\n";
  }
  o << "\n[prep]\n";
  o << "voxel_size = " << format_double(c.prep.voxel_size) << "\n";
  o << "outlier_neighbors_k = " << c.prep.outlier_neighbors_k << "\n";
  o << "outlier_std_ratio_base = " << format_double(c.prep.outlier_std_ratio_base) << "\n";
  o << "reference_height = " << format_double(c.prep.reference_height) << "\n";
  o << "\n[raster]\n";
  o << "image_long_side = " << c.raster.image_long_side << "\n";
  o << "margin = " << c.raster.margin << "\n";
  o << "dilation_radius = " << c.raster.dilation_radius << "\n";
  o << "dp_epsilon = " << format_double(c.raster.dp_epsilon) << "\n";
  o << "\n[features]\n";
  o << "kind = " << quote(c.features.use_hog ? "orb+hog" : "orb") << "\n";
  o << "dense = " << (c.features.dense ? "true" : "false") << "\n";
  o << "stride = " << c.features.dense_stride << "\n";
  o << "stage = " << quote(to_string(c.features.stage)) << "\n";
  o << "max_keypoints = " << c.features.max_keypoints << "\n";
  o << "fast_threshold = " << c.features.fast_threshold << "\n";
  o << "hog_cell_size = " << c.features.hog.cell_size << "\n";
  o << "hog_bins = " << c.features.hog.bins << "\n";
  o << "\n[codebook]\n";
  o << "clusters = " << c.clusters << "\n";
  o << "metric = " << quote(to_string(c.cluster_metric)) << "\n";
  o << "hog_weight = " << format_double(c.hog_weight) << "\n";
  o << "\n[matching]\n";
  o << "distance = " << quote(to_string(c.distance)) << "\n";
  return o.str();
}

PipelineConfig parse_config(const std::string& text, PipelineConfig base, const std::string& source) {
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // '#' outside quotes starts a comment.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    try {
      apply_setting(base, section.empty() ? key : section + "." + key, value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base), path.string());
}

}  // namespace facade
