#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facade/cloud_prep.hpp"
#include "facade/codebook.hpp"
#include "facade/features.hpp"
#include "facade/matching.hpp"
#include "facade/mesh.hpp"
#include "facade/raster.hpp"

namespace facade {

struct FeatureConfig {
  bool use_hog = true;  ///< "orb+hog" vs "orb"
  bool dense = false;
  int dense_stride = 8;
  FeatureStage stage = FeatureStage::dilated;
  int max_keypoints = kDefaultMaxKeypoints;
  int fast_threshold = kDefaultFastThreshold;
  HogConfig hog;

  bool operator==(const FeatureConfig&) const = default;
};

/// Every knob of the train / match / evaluate flow. All randomness derives
/// from master_seed.
struct PipelineConfig {
  SamplingConfig sampling{0.0, {"glass"}, 0};  ///< distance 0 = automatic per model
  std::map<std::string, double> model_sampling_distance;
  PrepConfig prep;
  RasterConfig raster;
  FeatureConfig features;
  int clusters = kDefaultClusterCount;
  ClusterMetric cluster_metric = ClusterMetric::euclidean;
  double hog_weight = 1.0;
  DistanceKind distance;
  std::uint64_t master_seed = 0;
  int jobs = 0;

  bool operator==(const PipelineConfig&) const = default;
};

/// Throws Error naming the first invalid field.
void validate(const PipelineConfig& cfg);

/// Identifies everything that shapes a histogram (sampling excluded).
std::string feature_fingerprint(const PipelineConfig& cfg);

/// Stable 64-bit hash of a string (FNV-1a), used to derive per-model seeds.
std::uint64_t stable_hash(const std::string& s);

/// Material removal + surface sampling with the model's spacing and derived seed.
PointCloud sample_model(const TriangleMesh& mesh, const std::string& model_id, const PipelineConfig& cfg);

/// Outlier removal, downsampling, normalization.
PointCloud prepare_cloud(const PointCloud& cloud, const PipelineConfig& cfg);

struct ImageFeatures {
  RasterStages stages;
  std::vector<Keypoint> keypoints;
  DescriptorSet descriptors;
  std::optional<HogVector> hog;
};

/// Raster chain and feature extraction on an already prepared cloud.
ImageFeatures extract_features(const PointCloud& prepared, const PipelineConfig& cfg);

CombinedHistogram describe(const ImageFeatures& features, const Codebook& book, const PipelineConfig& cfg);

struct ModelCloud {
  std::string id;
  PointCloud cloud;
};

/// Trained codebook plus one histogram per library model.
struct Library {
  PipelineConfig config;
  Codebook codebook;
  std::vector<LibraryEntry> entries;
  std::vector<std::size_t> descriptor_counts;
};

/// Prepares every model cloud, trains the codebook on the pooled descriptors
/// and describes each model. Models are processed in id order.
Library train_library(std::vector<ModelCloud> models, const PipelineConfig& cfg);

/// prepare -> features -> histogram for one raw cloud.
CombinedHistogram describe_cloud(const PointCloud& raw, const Library& lib, RasterStages* stages = nullptr);

void save_bundle(const std::filesystem::path& path, const Library& lib);
Library load_bundle(const std::filesystem::path& path);

}  // namespace facade
