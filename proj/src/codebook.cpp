#include "facade/codebook.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace facade {

ClusterMetric parse_cluster_metric(const std::string& s) {
  if (s == "euclidean") return ClusterMetric::euclidean;
  if (s == "hamming") return ClusterMetric::hamming;
  throw Error("unknown cluster metric '" + s + "'");
}

std::string to_string(ClusterMetric m) { return m == ClusterMetric::hamming ? "hamming" : "euclidean"; }

Codebook train_codebook(const Eigen::MatrixXd& descriptors, int n, std::uint64_t seed, std::string fingerprint,
                        ClusterMetric metric) {
  if (n < 2) throw Error("codebook needs at least two clusters");
  KMeansOptions opt;
  opt.seed = seed;
  opt.binary_centers = metric == ClusterMetric::hamming;
  auto result = kmeans(descriptors, n, opt);
  Codebook book;
  book.centers = std::move(result.centers);
  book.feature_fingerprint = std::move(fingerprint);
  book.seed = seed;
  book.metric = metric;
  return book;
}

std::vector<int> assign(const Eigen::MatrixXd& descriptors, const Codebook& book) {
  if (descriptors.rows() > 0 && descriptors.cols() != book.dim())
    throw Error("descriptor dimension " + std::to_string(descriptors.cols()) + " does not match codebook dimension " +
                std::to_string(book.dim()));
  std::vector<int> out(static_cast<std::size_t>(descriptors.rows()));
  for (Eigen::Index i = 0; i < descriptors.rows(); ++i)
    out[static_cast<std::size_t>(i)] = nearest_center(descriptors.row(i), book.centers);
  return out;
}

Eigen::VectorXd quantize(const Eigen::MatrixXd& descriptors, const Codebook& book) {
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(book.n());
  for (int a : assign(descriptors, book)) hist(a) += 1.0;
  if (descriptors.rows() > 0) hist /= static_cast<double>(descriptors.rows());
  return hist;
}

Eigen::VectorXd quantize(const DescriptorSet& descriptors, const Codebook& book) {
  if (book.dim() != kDescriptorBits)
    throw Error("codebook dimension " + std::to_string(book.dim()) + " does not match ORB descriptors");
  return quantize(embed(descriptors.descriptors), book);
}

std::uint64_t content_hash(const Codebook& book) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) h = (h ^ p[i]) * 1099511628211ULL;
  };
  const std::int64_t shape[2] = {book.centers.rows(), book.centers.cols()};
  mix(shape, sizeof shape);
  for (Eigen::Index r = 0; r < book.centers.rows(); ++r)
    for (Eigen::Index c = 0; c < book.centers.cols(); ++c) {
      const double v = book.centers(r, c);
      mix(&v, sizeof v);
    }
  return h;
}

OrderedJson to_json(const Codebook& book) {
  OrderedJson j;
  j["format"] = kCodebookMagic;
  j["version"] = kCodebookVersion;
  j["n"] = book.n();
  j["dim"] = book.dim();
  OrderedJson centers = OrderedJson::array();
  for (Eigen::Index r = 0; r < book.centers.rows(); ++r)
    for (Eigen::Index c = 0; c < book.centers.cols(); ++c) centers.push_back(book.centers(r, c));
  j["centers"] = std::move(centers);
  j["feature_fingerprint"] = book.feature_fingerprint;
  j["seed"] = book.seed;
  j["metric"] = to_string(book.metric);
  return j;
}

Codebook codebook_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("format") || j["format"] != kCodebookMagic)
    throw Error("not a codebook (missing or wrong format magic)");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kCodebookVersion)
    throw Error("unsupported codebook version");
  try {
    const int n = j.at("n").get<int>();
    const int dim = j.at("dim").get<int>();
    const auto& centers = j.at("centers");
    if (n < 2 || dim < 1 || !centers.is_array() || centers.size() != static_cast<std::size_t>(n) * dim)
      throw Error("corrupt codebook: centre array does not match n x dim");
    Codebook book;
    book.centers.resize(n, dim);
    std::size_t k = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < dim; ++c) book.centers(r, c) = centers[k++].get<double>();
    if (!book.centers.allFinite()) throw Error("corrupt codebook: non-finite centre");
    book.feature_fingerprint = j.at("feature_fingerprint").get<std::string>();
    book.seed = j.at("seed").get<std::uint64_t>();
    book.metric = parse_cluster_metric(j.value("metric", std::string("euclidean")));
    return book;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("corrupt codebook: ") + e.what());
  }
}

void save_codebook(const std::filesystem::path& path, const Codebook& book) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_json(to_json(book)) << '\n';
  if (!out) throw Error("cannot write " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": corrupt codebook: " + e.what());
  }
  return codebook_from_json(j);
}

CombinedHistogram fuse(const Eigen::VectorXd& bow, const Eigen::VectorXd& hog, double hog_weight) {
  if (!(hog_weight > 0)) throw Error("hog_weight must be positive");
  if ((bow.array() < 0).any() || (hog.array() < 0).any()) throw Error("histogram blocks must be non-negative");
  CombinedHistogram out;
  out.block_boundary = bow.size();
  out.hog_weight = hog_weight;
  out.values.resize(bow.size() + hog.size());
  out.values.head(bow.size()) = bow;
  out.values.tail(hog.size()) = hog_weight * l1_normalized(hog);
  return out;
}

CombinedHistogram fuse(const Eigen::VectorXd& bow, const HogVector& hog, double hog_weight) {
  return fuse(bow, hog.values, hog_weight);
}

CombinedHistogram bow_only(const Eigen::VectorXd& bow) {
  CombinedHistogram out;
  out.values = bow;
  out.block_boundary = bow.size();
  return out;
}

SuggestNReport suggest_n(const Eigen::MatrixXd& descriptors, const std::vector<int>& candidates, std::uint64_t seed,
                         ClusterMetric metric) {
  SuggestNReport report;
  double best = 2.0;
  for (int n : candidates) {
    if (n < 2 || n > descriptors.rows()) continue;
    KMeansOptions opt;
    opt.seed = seed;
    opt.binary_centers = metric == ClusterMetric::hamming;
    const auto result = kmeans(descriptors, n, opt);
    ClusterOccupancy occ;
    occ.n = n;
    occ.counts.assign(static_cast<std::size_t>(n), 0);
    for (int a : result.assignment) ++occ.counts[static_cast<std::size_t>(a)];
    const double mean = static_cast<double>(descriptors.rows()) / n;
    int empty = 0, overloaded = 0;
    for (int c : occ.counts) {
      if (c == 0) ++empty;
      if (c > 3.0 * mean) ++overloaded;
    }
    occ.empty_fraction = static_cast<double>(empty) / n;
    occ.overloaded_fraction = static_cast<double>(overloaded) / n;
    occ.inertia = result.inertia_history.empty() ? 0.0 : static_cast<double>(result.inertia_history.back());
    const double score = occ.empty_fraction + occ.overloaded_fraction;
    if (score < best) {
      best = score;
      report.suggested_n = n;
    }
    report.sweep.push_back(std::move(occ));
  }
  if (report.sweep.empty()) throw Error("no candidate cluster count fits the descriptor set");
  return report;
}

}  // namespace facade
