#include "facade/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "facade/config_io.hpp"
#include "facade/json_out.hpp"
#include "facade/parallel.hpp"

namespace facade {
namespace {

constexpr const char* kBundleMagic = "facade-bundle";
constexpr int kBundleVersion = 1;
constexpr std::uint64_t kCodebookSalt = 0xC0DEB00CULL;

}  // namespace

void validate(const PipelineConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error("invalid config: " + what);
  };
  require(c.sampling.sampling_distance >= 0, "sampling.distance must be >= 0 (0 = automatic)");
  for (const auto& [id, d] : c.model_sampling_distance) require(d > 0, "sampling.models." + id + " must be > 0");
  require(c.prep.voxel_size >= 0, "prep.voxel_size must be >= 0");
  require(c.prep.outlier_neighbors_k >= 1, "prep.outlier_neighbors_k must be >= 1");
  require(c.prep.outlier_std_ratio_base > 0, "prep.outlier_std_ratio_base must be > 0");
  require(c.prep.reference_height >= 0, "prep.reference_height must be >= 0");
  require(c.raster.image_long_side >= 16, "raster.image_long_side must be >= 16");
  require(c.raster.margin >= 0 && c.raster.image_long_side - 2 * c.raster.margin >= 2, "raster.margin too large");
  require(c.raster.dilation_radius >= 0, "raster.dilation_radius must be >= 0");
  require(c.raster.dp_epsilon > 0, "raster.dp_epsilon must be > 0");
  require(c.features.dense_stride >= 1, "features.stride must be >= 1");
  require(c.features.max_keypoints >= 1, "features.max_keypoints must be >= 1");
  require(c.features.fast_threshold >= 0 && c.features.fast_threshold < 255, "features.fast_threshold must be in [0, 255)");
  require(c.features.hog.cell_size >= 1 && c.features.hog.bins >= 1, "HOG cell size and bins must be >= 1");
  require(!c.features.dense || c.raster.image_long_side >= 33, "dense sampling needs image_long_side >= 33");
  require(c.clusters >= 2, "codebook.clusters must be >= 2");
  require(c.hog_weight > 0, "codebook.hog_weight must be > 0");
  require(c.distance.type != DistanceKind::Type::minkowski || c.distance.p >= 1, "Minkowski order must be >= 1");
  require(c.jobs >= 0, "jobs must be >= 0");
}

std::string feature_fingerprint(const PipelineConfig& c) {
  std::ostringstream o;
  o << "features=" << (c.features.use_hog ? "orb+hog" : "orb") << ";dense=" << (c.features.dense ? 1 : 0)
    << ";stride=" << c.features.dense_stride << ";stage=" << to_string(c.features.stage)
    << ";max_keypoints=" << c.features.max_keypoints << ";fast=" << c.features.fast_threshold
    << ";hog=" << c.features.hog.cell_size << "x" << c.features.hog.bins << ";raster=" << c.raster.image_long_side << "/"
    << c.raster.margin << "/" << c.raster.dilation_radius << "/" << format_double(c.raster.dp_epsilon)
    << ";prep=" << format_double(c.prep.voxel_size) << "/" << c.prep.outlier_neighbors_k << "/"
    << format_double(c.prep.outlier_std_ratio_base) << "/" << format_double(c.prep.reference_height)
    << ";metric=" << to_string(c.cluster_metric);
  return o.str();
}

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

PointCloud sample_model(const TriangleMesh& mesh, const std::string& model_id, const PipelineConfig& cfg) {
  const TriangleMesh opaque = remove_materials(mesh, cfg.sampling.excluded_materials);
  SamplingConfig s = cfg.sampling;
  if (auto it = cfg.model_sampling_distance.find(model_id); it != cfg.model_sampling_distance.end())
    s.sampling_distance = it->second;
  else if (s.sampling_distance == 0)
    s.sampling_distance = auto_sampling_distance(opaque);
  s.seed = mix_seed(cfg.master_seed, stable_hash(model_id));
  PointCloud cloud = sample_surface(opaque, s);
  cloud.label = model_id;
  return cloud;
}

PointCloud prepare_cloud(const PointCloud& cloud, const PipelineConfig& cfg) {
  require_finite(cloud);
  PointCloud out = remove_outliers(cloud, cfg.prep);
  out = downsample(out, cfg.prep.voxel_size);
  return normalize(out);
}

ImageFeatures extract_features(const PointCloud& prepared, const PipelineConfig& cfg) {
  ImageFeatures f;
  f.stages = raster_chain(prepared, cfg.raster);
  const BinaryImage& img = f.stages.stage(cfg.features.stage);
  if (cfg.features.dense) {
    f.descriptors = dense_orb(img, cfg.features.dense_stride);
  } else {
    auto orb = detect_orb(img, cfg.features.max_keypoints, cfg.features.fast_threshold);
    f.keypoints = std::move(orb.keypoints);
    f.descriptors = std::move(orb.descriptors);
  }
  if (cfg.features.use_hog) f.hog = compute_hog(img, cfg.features.hog);
  return f;
}

CombinedHistogram describe(const ImageFeatures& features, const Codebook& book, const PipelineConfig& cfg) {
  const Eigen::VectorXd bow = quantize(features.descriptors, book);
  if (!cfg.features.use_hog) return bow_only(bow);
  if (!features.hog) throw Error("HOG features missing for an orb+hog configuration");
  return fuse(bow, *features.hog, cfg.hog_weight);
}

Library train_library(std::vector<ModelCloud> models, const PipelineConfig& cfg) {
  validate(cfg);
  if (models.empty()) throw Error("no models found");
  std::sort(models.begin(), models.end(), [](const ModelCloud& a, const ModelCloud& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < models.size(); ++i)
    if (models[i].id == models[i - 1].id) throw Error("duplicate model id '" + models[i].id + "'");

  std::vector<ImageFeatures> feats(models.size());
  parallel_for(models.size(), cfg.jobs, [&](std::size_t i) {
    try {
      feats[i] = extract_features(prepare_cloud(models[i].cloud, cfg), cfg);
    } catch (const Error& e) {
      throw Error("model '" + models[i].id + "': " + e.what());
    }
  });
  std::size_t total = 0;
  for (const auto& f : feats) total += f.descriptors.size();
  Eigen::MatrixXd pooled(static_cast<Eigen::Index>(total), kDescriptorBits);
  Eigen::Index row = 0;
  for (const auto& f : feats) {
    const Eigen::MatrixXd e = embed(f.descriptors.descriptors);
    pooled.middleRows(row, e.rows()) = e;
    row += e.rows();
  }

  Library lib;
  lib.config = cfg;
  lib.codebook = train_codebook(pooled, cfg.clusters, mix_seed(cfg.master_seed, kCodebookSalt), feature_fingerprint(cfg),
                                cfg.cluster_metric);
  for (std::size_t i = 0; i < models.size(); ++i) {
    lib.entries.push_back({models[i].id, describe(feats[i], lib.codebook, cfg)});
    lib.descriptor_counts.push_back(feats[i].descriptors.size());
  }
  return lib;
}

CombinedHistogram describe_cloud(const PointCloud& raw, const Library& lib, RasterStages* stages) {
  ImageFeatures f = extract_features(prepare_cloud(raw, lib.config), lib.config);
  CombinedHistogram h = describe(f, lib.codebook, lib.config);
  if (stages) *stages = std::move(f.stages);
  return h;
}

void save_bundle(const std::filesystem::path& path, const Library& lib) {
  OrderedJson j;
  j["format"] = kBundleMagic;
  j["version"] = kBundleVersion;
  PipelineConfig stored = lib.config;
  stored.jobs = 0;
  j["config"] = emit_config(stored);
  j["codebook"] = to_json(lib.codebook);
  OrderedJson entries = OrderedJson::array();
  for (std::size_t i = 0; i < lib.entries.size(); ++i) {
    const auto& e = lib.entries[i];
    OrderedJson m;
    m["model"] = e.model_id;
    m["descriptors"] = i < lib.descriptor_counts.size() ? lib.descriptor_counts[i] : 0;
    m["block_boundary"] = e.histogram.block_boundary;
    m["hog_weight"] = e.histogram.hog_weight;
    m["histogram"] = std::vector<double>(e.histogram.values.data(), e.histogram.values.data() + e.histogram.size());
    entries.push_back(std::move(m));
  }
  j["library"] = std::move(entries);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_json(j) << '\n';
  if (!out) throw Error("cannot write " + path.string());
}

Library load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": corrupt bundle: " + e.what());
  }
  if (!j.is_object() || j.value("format", std::string()) != kBundleMagic)
    throw Error(path.string() + ": not a bundle (missing or wrong format magic)");
  if (j.value("version", -1) != kBundleVersion) throw Error(path.string() + ": unsupported bundle version");
  try {
    Library lib;
    lib.config = parse_config(j.at("config").get<std::string>(), PipelineConfig{}, path.string() + "#config");
    lib.codebook = codebook_from_json(j.at("codebook"));
    if (lib.codebook.feature_fingerprint != feature_fingerprint(lib.config))
      throw Error("codebook fingerprint does not match the stored config");
    for (const auto& m : j.at("library")) {
      LibraryEntry e;
      e.model_id = m.at("model").get<std::string>();
      const auto values = m.at("histogram").get<std::vector<double>>();
      e.histogram.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
      e.histogram.block_boundary = m.at("block_boundary").get<Eigen::Index>();
      e.histogram.hog_weight = m.at("hog_weight").get<double>();
      lib.descriptor_counts.push_back(m.at("descriptors").get<std::size_t>());
      lib.entries.push_back(std::move(e));
    }
    if (lib.entries.empty()) throw Error("bundle has no library models");
    return lib;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": corrupt bundle: " + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace facade
