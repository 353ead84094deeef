#include "facade/matching.hpp"

#include <algorithm>

namespace facade {

DistanceKind parse_distance(const std::string& s) {
  DistanceKind k;
  if (s == "jsd") {
    k.type = DistanceKind::Type::jensen_shannon;
  } else if (s == "kl") {
    k.type = DistanceKind::Type::kullback_leibler;
  } else if (s == "chi2") {
    k.type = DistanceKind::Type::chi_square_pearson;
  } else if (s == "chi2sym") {
    k.type = DistanceKind::Type::chi_square_symmetric;
  } else if (s.rfind("minkowski", 0) == 0) {
    k.type = DistanceKind::Type::minkowski;
    if (s.size() > 9) {
      if (s[9] != ':') throw Error("bad distance '" + s + "'");
      try {
        std::size_t used = 0;
        k.p = std::stod(s.substr(10), &used);
        if (used != s.size() - 10) throw Error("");
      } catch (const std::exception&) {
        throw Error("bad Minkowski order in '" + s + "'");
      }
    }
    if (!(k.p >= 1)) throw Error("Minkowski order must be >= 1");
  } else {
    throw Error("unknown distance '" + s + "' (expected minkowski:p, jsd, kl, chi2 or chi2sym)");
  }
  return k;
}

std::string to_string(const DistanceKind& kind) {
  switch (kind.type) {
    case DistanceKind::Type::minkowski: return "minkowski:" + format_double(kind.p);
    case DistanceKind::Type::jensen_shannon: return "jsd";
    case DistanceKind::Type::kullback_leibler: return "kl";
    case DistanceKind::Type::chi_square_pearson: return "chi2";
    case DistanceKind::Type::chi_square_symmetric: return "chi2sym";
  }
  return "chi2";
}

double histogram_distance(const Eigen::VectorXd& model, const Eigen::VectorXd& target, const DistanceKind& kind) {
  switch (kind.type) {
    case DistanceKind::Type::minkowski: return minkowski(model, target, kind.p);
    case DistanceKind::Type::jensen_shannon: return jensen_shannon(l1_normalized(model), l1_normalized(target));
    case DistanceKind::Type::kullback_leibler: return kl_divergence(l1_normalized(model), l1_normalized(target));
    case DistanceKind::Type::chi_square_pearson: return chi_square(model, target, false);
    case DistanceKind::Type::chi_square_symmetric: return chi_square(model, target, true);
  }
  throw Error("unknown distance kind");
}

MatchResult match(const CombinedHistogram& target, const std::vector<LibraryEntry>& library, const DistanceKind& kind) {
  if (library.empty()) throw Error("empty model library");
  MatchResult result;
  for (const auto& entry : library) {
    if (entry.histogram.size() != target.size() || entry.histogram.block_boundary != target.block_boundary)
      throw Error("histogram layout of model '" + entry.model_id + "' does not match the target");
    result.ranking.emplace_back(entry.model_id, histogram_distance(entry.histogram.values, target.values, kind));
  }
  std::sort(result.ranking.begin(), result.ranking.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return result;
}

OrderedJson to_json(const MatchResult& result) {
  OrderedJson j;
  j["best"] = result.best();
  OrderedJson ranking = OrderedJson::array();
  for (const auto& [id, d] : result.ranking) ranking.push_back(OrderedJson{{"model", id}, {"distance", d}});
  j["ranking"] = std::move(ranking);
  return j;
}

}  // namespace facade
