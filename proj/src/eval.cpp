#include "facade/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "facade/error.hpp"

namespace facade {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)),
      counts_(Counts::Zero(static_cast<Eigen::Index>(classes_.size()), static_cast<Eigen::Index>(classes_.size()))),
      row_sums_(classes_.size(), 0),
      col_sums_(classes_.size(), 0) {
  if (classes_.empty()) throw Error("confusion matrix needs at least one class");
  if (std::set<std::string>(classes_.begin(), classes_.end()).size() != classes_.size())
    throw Error("duplicate class ids in confusion matrix");
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes, const Counts& counts)
    : ConfusionMatrix(std::move(classes)) {
  if (counts.rows() != size() || counts.cols() != size()) throw Error("confusion matrix shape mismatch");
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (counts(i, j) > 0) accumulate(i, j, counts(i, j));
      else if (counts(i, j) < 0) throw Error("negative confusion count");
}

int ConfusionMatrix::index_of(const std::string& id) const {
  const auto it = std::find(classes_.begin(), classes_.end(), id);
  if (it == classes_.end()) throw Error("unknown class '" + id + "'");
  return static_cast<int>(it - classes_.begin());
}

void ConfusionMatrix::accumulate(const std::string& truth, const std::string& predicted) {
  accumulate(index_of(truth), index_of(predicted));
}

void ConfusionMatrix::accumulate(int truth, int predicted, std::int64_t times) {
  if (truth < 0 || truth >= size() || predicted < 0 || predicted >= size()) throw Error("class index out of range");
  if (times < 0) throw Error("negative increment");
  counts_(truth, predicted) += times;
  row_sums_[static_cast<std::size_t>(truth)] += times;
  col_sums_[static_cast<std::size_t>(predicted)] += times;
  if (truth == predicted) trace_ += times;
  total_ += times;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (other.classes_ != classes_) throw Error("cannot merge confusion matrices over different classes");
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (other.counts_(i, j)) accumulate(i, j, other.counts_(i, j));
}

namespace {

void require_samples(const ConfusionMatrix& cm) {
  if (cm.total() <= 0) throw Error("confusion matrix is empty");
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : "n/a"; }

std::optional<double> parse_opt(const std::string& s) {
  if (s == "n/a" || s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error("bad number '" + s + "' in metrics CSV");
  return v;
}

OrderedJson opt_json(const std::optional<double>& v) { return v ? OrderedJson(*v) : OrderedJson(nullptr); }

}  // namespace

double overall_accuracy(const ConfusionMatrix& cm) {
  require_samples(cm);
  return static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
}

std::vector<ClassAccuracy> producers_users_accuracy(const ConfusionMatrix& cm) {
  require_samples(cm);
  std::vector<ClassAccuracy> out(static_cast<std::size_t>(cm.size()));
  for (int k = 0; k < cm.size(); ++k) {
    const auto diag = static_cast<double>(cm.counts()(k, k));
    if (cm.row_sum(k) > 0) out[static_cast<std::size_t>(k)].producers = diag / static_cast<double>(cm.row_sum(k));
    if (cm.col_sum(k) > 0) out[static_cast<std::size_t>(k)].users = diag / static_cast<double>(cm.col_sum(k));
  }
  return out;
}

double random_match(const ConfusionMatrix& cm) {
  require_samples(cm);
  double products = 0;
  for (int k = 0; k < cm.size(); ++k) products += static_cast<double>(cm.row_sum(k)) * static_cast<double>(cm.col_sum(k));
  const double total = static_cast<double>(cm.total());
  return products / (total * total);
}

Kappa kappa(const ConfusionMatrix& cm) {
  const double rm = random_match(cm);
  if (rm >= 1.0) throw Error("kappa undefined");
  return {(overall_accuracy(cm) - rm) / (1.0 - rm), rm};
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.overall_accuracy = overall_accuracy(cm);
  const auto acc = producers_users_accuracy(cm);
  for (int k = 0; k < cm.size(); ++k) {
    r.producers_accuracy[cm.classes()[static_cast<std::size_t>(k)]] = acc[static_cast<std::size_t>(k)].producers;
    r.users_accuracy[cm.classes()[static_cast<std::size_t>(k)]] = acc[static_cast<std::size_t>(k)].users;
  }
  r.random_match = random_match(cm);
  if (r.random_match < 1.0) r.kappa = (r.overall_accuracy - r.random_match) / (1.0 - r.random_match);
  return r;
}

std::string metrics_csv(const std::vector<ReportEntry>& entries) {
  std::ostringstream out;
  out << "config,class,PA,UA\n";
  for (const auto& e : entries) {
    if (e.config.find(',') != std::string::npos) throw Error("config label must not contain commas");
    for (const auto& [cls, pa] : e.metrics.producers_accuracy) {
      const auto ua = e.metrics.users_accuracy.at(cls);
      out << e.config << ',' << cls << ',' << fmt_opt(pa) << ',' << fmt_opt(ua) << '\n';
    }
    out << e.config << ",OA," << format_double(e.metrics.overall_accuracy) << ",\n";
    out << e.config << ",kappa," << fmt_opt(e.metrics.kappa) << ",\n";
    out << e.config << ",RM," << format_double(e.metrics.random_match) << ",\n";
  }
  return out.str();
}

std::vector<std::pair<std::string, MetricsReport>> parse_metrics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "config,class,PA,UA") throw Error("metrics CSV: bad header");
  std::vector<std::pair<std::string, MetricsReport>> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 4) throw ParseError("metrics.csv", line_no, "expected 4 columns");
    if (out.empty() || out.back().first != f[0]) out.emplace_back(f[0], MetricsReport{});
    auto& r = out.back().second;
    if (f[1] == "OA") {
      r.overall_accuracy = parse_opt(f[2]).value_or(0.0);
    } else if (f[1] == "kappa") {
      r.kappa = parse_opt(f[2]);
    } else if (f[1] == "RM") {
      r.random_match = parse_opt(f[2]).value_or(0.0);
    } else {
      r.producers_accuracy[f[1]] = parse_opt(f[2]);
      r.users_accuracy[f[1]] = parse_opt(f[3]);
    }
  }
  return out;
}

OrderedJson to_json(const ConfusionMatrix& cm) {
  OrderedJson j;
  j["classes"] = cm.classes();
  OrderedJson rows = OrderedJson::array();
  for (int i = 0; i < cm.size(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (int k = 0; k < cm.size(); ++k) row.push_back(cm.counts()(i, k));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

OrderedJson to_json(const MetricsReport& report) {
  OrderedJson j;
  j["overall_accuracy"] = report.overall_accuracy;
  j["kappa"] = opt_json(report.kappa);
  j["random_match"] = report.random_match;
  OrderedJson per_class = OrderedJson::object();
  for (const auto& [cls, pa] : report.producers_accuracy)
    per_class[cls] = OrderedJson{{"PA", opt_json(pa)}, {"UA", opt_json(report.users_accuracy.at(cls))}};
  j["per_class"] = std::move(per_class);
  return j;
}

OrderedJson report_json(const std::vector<ReportEntry>& entries) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& e : entries) {
    OrderedJson j;
    j["config"] = e.config;
    j["metrics"] = to_json(e.metrics);
    j["confusion"] = to_json(e.confusion);
    arr.push_back(std::move(j));
  }
  return OrderedJson{{"reports", std::move(arr)}};
}

}  // namespace facade
