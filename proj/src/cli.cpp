#include "facade/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "facade/cloud_io.hpp"
#include "facade/config_io.hpp"
#include "facade/eval.hpp"
#include "facade/json_out.hpp"
#include "facade/noise_experiment.hpp"
#include "facade/parallel.hpp"
#include "facade/pipeline.hpp"
#include "facade/synthetic.hpp"

namespace facade {
namespace {

namespace fs = std::filesystem;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<fs::path> list_files(const fs::path& dir, const std::set<std::string>& extensions) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && extensions.count(lower(e.path().extension().string()))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": not a number: '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError(what + " is empty");
  return values;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write " + path.string());
}

/// Options that shape a pipeline configuration; flags override the config file.
struct PipelineOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool dense = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
    add(app, "--seed", "master_seed", "Master seed (U64)");
    add(app, "--features", "features.kind", "orb or orb+hog");
    app->add_flag("--dense", dense, "Dense grid sampling instead of keypoints");
    add(app, "--stride", "features.stride", "Dense grid stride in pixels");
    add(app, "--feature-stage", "features.stage", "projected, dilated, edges or simplified");
    add(app, "--hog-weight", "codebook.hog_weight", "Weight of the HOG block");
    add(app, "--clusters", "codebook.clusters", "Codebook size n");
    add(app, "--metric", "codebook.metric", "euclidean or hamming");
    add(app, "--distance", "matching.distance", "minkowski:P, jsd, kl, chi2 or chi2sym");
    add(app, "--jobs", "jobs", "Worker threads (0 = all processors)");
  }

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
  }

  PipelineConfig build() const {
    try {
      PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
      for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
      if (dense) cfg.features.dense = true;
      validate(cfg);
      return cfg;
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
};

std::vector<ModelCloud> load_models(const fs::path& dir, const PipelineConfig& cfg) {
  const auto files = list_files(dir, {".obj"});
  if (files.empty()) throw UsageError("no models found in " + dir.string());
  std::vector<ModelCloud> models(files.size());
  parallel_for(files.size(), cfg.jobs, [&](std::size_t i) {
    const std::string id = files[i].stem().string();
    models[i] = {id, sample_model(load_obj(files[i]), id, cfg)};
  });
  return models;
}

std::vector<ModelCloud> synthetic_models(const PipelineConfig& cfg) {
  std::vector<ModelCloud> models;
  for (const auto& m : synthetic_window_models()) models.push_back({m.id, sample_model(m.mesh, m.id, cfg)});
  return models;
}

int cmd_train(const fs::path& model_dir, const PipelineOptions& opts, const fs::path& out_path, std::ostream& out) {
  const PipelineConfig cfg = opts.build();
  const Library lib = train_library(load_models(model_dir, cfg), cfg);
  save_bundle(out_path, lib);
  for (std::size_t i = 0; i < lib.entries.size(); ++i)
    out << lib.entries[i].model_id << '\t' << lib.descriptor_counts[i] << " descriptors\n";
  return kExitOk;
}

struct BundleOptions {
  std::string bundle;
  std::optional<std::string> distance;
  std::optional<int> jobs;

  void attach(CLI::App* app, bool required) {
    auto* b = app->add_option("--bundle", bundle, "Bundle written by train")->check(CLI::ExistingFile);
    if (required) b->required();
    app->add_option("--distance", distance, "Override the stored histogram distance");
    app->add_option("--jobs", jobs, "Worker threads (0 = all processors)");
  }

  Library load() const {
    Library lib = load_bundle(bundle);
    try {
      if (distance) lib.config.distance = parse_distance(*distance);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (jobs) {
      if (*jobs < 0) throw UsageError("jobs must be >= 0");
      lib.config.jobs = *jobs;
    }
    return lib;
  }
};

void dump_stages(const fs::path& dir, const fs::path& target, const RasterStages& stages) {
  fs::create_directories(dir);
  const std::string stem = target.stem().string();
  for (FeatureStage s : {FeatureStage::projected, FeatureStage::dilated, FeatureStage::edges, FeatureStage::simplified})
    write_png(dir / (stem + "_" + to_string(s) + ".png"), stages.stage(s));
}

int cmd_match(const BundleOptions& bopts, const std::vector<std::string>& targets, const std::string& dump_dir,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Library lib = bopts.load();
  std::vector<std::string> lines(targets.size());
  std::vector<char> ok(targets.size(), 0);
  parallel_for(targets.size(), lib.config.jobs, [&](std::size_t i) {
    OrderedJson row;
    row["target"] = targets[i];
    try {
      RasterStages stages;
      const MatchResult r = match(describe_cloud(read_cloud(targets[i]), lib, &stages), lib.entries, lib.config.distance);
      if (!dump_dir.empty()) dump_stages(dump_dir, targets[i], stages);
      const OrderedJson result = to_json(r);
      for (auto it = result.begin(); it != result.end(); ++it) row[it.key()] = it.value();
      ok[i] = 1;
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    lines[i] = dump_json(row);
  });
  std::ostringstream text;
  for (const auto& l : lines) text << l << '\n';
  if (out_path.empty())
    out << text.str();
  else
    write_text(out_path, text.str());
  const auto failures = std::count(ok.begin(), ok.end(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!ok[i]) err << "failed: " << targets[i] << '\n';
  if (failures == static_cast<long>(targets.size())) {
    err << "no target could be matched\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct LabelledTarget {
  fs::path path;
  std::string name;
  std::string label;
};

std::vector<LabelledTarget> read_labels(const fs::path& labels_path, const std::string& targets_dir) {
  std::ifstream in(labels_path);
  if (!in) throw UsageError("cannot open labels " + labels_path.string());
  const fs::path root = targets_dir.empty() ? labels_path.parent_path() : fs::path(targets_dir);
  std::vector<LabelledTarget> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && lower(line) == "filename,label")) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == line.size())
      throw ParseError(labels_path.string(), line_no, "expected filename,label");
    const std::string name = line.substr(0, comma);
    out.push_back({root / name, name, line.substr(comma + 1)});
  }
  if (out.empty()) throw UsageError("labels file lists no targets");

  std::vector<std::string> unmatched;
  std::set<fs::path> labelled;
  for (const auto& t : out) {
    if (!fs::is_regular_file(t.path)) unmatched.push_back(t.name + " (labelled but missing)");
    labelled.insert(fs::weakly_canonical(t.path));
  }
  if (!targets_dir.empty())
    for (const auto& f : list_files(targets_dir, {".xyz", ".ply"}))
      if (!labelled.count(fs::weakly_canonical(f))) unmatched.push_back(f.filename().string() + " (target without label)");
  if (!unmatched.empty()) {
    std::string msg = "label file mismatch:";
    for (const auto& u : unmatched) msg += "\n  " + u;
    throw UsageError(msg);
  }
  return out;
}

void emit_report(const std::vector<ReportEntry>& entries, const std::string& prefix, std::ostream& out) {
  const std::string csv = metrics_csv(entries);
  out << csv;
  if (!prefix.empty()) {
    write_text(prefix + ".csv", csv);
    write_text(prefix + ".json", dump_json(report_json(entries)) + "\n");
  }
}

int cmd_evaluate_bundle(const BundleOptions& bopts, const std::string& labels, const std::string& targets_dir,
                        const std::string& prefix, std::ostream& out) {
  const auto targets = read_labels(labels, targets_dir);
  const Library lib = bopts.load();
  std::vector<std::string> predicted(targets.size());
  parallel_for(targets.size(), lib.config.jobs, [&](std::size_t i) {
    try {
      predicted[i] = match(describe_cloud(read_cloud(targets[i].path), lib), lib.entries, lib.config.distance).best();
    } catch (const std::exception& e) {
      throw Error(targets[i].name + ": " + e.what());
    }
  });
  std::vector<std::string> classes;
  for (const auto& e : lib.entries) classes.push_back(e.model_id);
  std::set<std::string> extra;
  for (const auto& t : targets)
    if (std::find(classes.begin(), classes.end(), t.label) == classes.end()) extra.insert(t.label);
  classes.insert(classes.end(), extra.begin(), extra.end());

  ReportEntry entry{fs::path(bopts.bundle).filename().string(), {}, ConfusionMatrix(classes)};
  for (std::size_t i = 0; i < targets.size(); ++i) entry.confusion.accumulate(targets[i].label, predicted[i]);
  entry.metrics = metrics(entry.confusion);
  emit_report({entry}, prefix, out);
  return kExitOk;
}

int cmd_evaluate_synthetic(const PipelineOptions& opts, const std::string& sigmas, int trials, const std::string& prefix,
                           std::ostream& out) {
  const PipelineConfig cfg = opts.build();
  if (trials < 1) throw UsageError("--trials must be >= 1");
  NoiseExperimentConfig nc{parse_list(sigmas, "--sigmas"), trials, cfg.master_seed, cfg.jobs};
  for (double s : nc.sigmas)
    if (!(s >= 0)) throw UsageError("--sigmas must be >= 0");
  const auto models = synthetic_models(cfg);
  const Library lib = train_library(models, cfg);
  emit_report(run_noise_experiment(models, lib, nc), prefix, out);
  return kExitOk;
}

int cmd_suggest_n(const std::string& model_dir, bool synthetic, const PipelineOptions& opts,
                  const std::string& candidates, std::ostream& out) {
  const PipelineConfig cfg = opts.build();
  std::vector<int> ns;
  for (double v : parse_list(candidates, "--candidates")) {
    if (v < 2 || v != static_cast<int>(v)) throw UsageError("--candidates must be integers >= 2");
    ns.push_back(static_cast<int>(v));
  }
  if (synthetic == !model_dir.empty()) throw UsageError("give either MODEL_DIR or --synthetic");
  const auto models = synthetic ? synthetic_models(cfg) : load_models(model_dir, cfg);
  std::vector<OrbDescriptor> pooled;
  for (const auto& m : models) {
    const auto f = extract_features(prepare_cloud(m.cloud, cfg), cfg);
    pooled.insert(pooled.end(), f.descriptors.descriptors.begin(), f.descriptors.descriptors.end());
  }
  const SuggestNReport report = suggest_n(embed(pooled), ns, cfg.master_seed, cfg.cluster_metric);
  OrderedJson j;
  j["descriptors"] = pooled.size();
  OrderedJson sweep = OrderedJson::array();
  for (const auto& c : report.sweep) {
    if (c.n == 0) continue;
    sweep.push_back(OrderedJson{{"n", c.n},
                                {"empty_fraction", c.empty_fraction},
                                {"overloaded_fraction", c.overloaded_fraction},
                                {"inertia", c.inertia},
                                {"counts", c.counts}});
  }
  j["sweep"] = std::move(sweep);
  j["suggested_n"] = report.suggested_n;
  out << dump_json(j) << '\n';
  return kExitOk;
}

int cmd_synth_models(const fs::path& dir, std::ostream& out) {
  fs::create_directories(dir);
  for (const auto& m : synthetic_window_models()) {
    save_obj(dir / (m.id + ".obj"), m.mesh);
    out << (dir / (m.id + ".obj")).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Window classification against a CAD model library (ORB/HOG bag of words)", "facade"};
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "Sample OBJ models, train the codebook and write a bundle");
  std::string model_dir, bundle_out;
  PipelineOptions train_opts;
  train->add_option("MODEL_DIR", model_dir, "Directory with OBJ/MTL models")->required();
  train->add_option("--out", bundle_out, "Bundle file to write")->required();
  train_opts.attach(train);

  auto* match_cmd = app.add_subcommand("match", "Match XYZ/PLY targets against a bundle (JSON lines)");
  BundleOptions match_opts;
  std::vector<std::string> targets;
  std::string dump_dir, match_out;
  match_opts.attach(match_cmd, true);
  match_cmd->add_option("TARGETS", targets, "XYZ or PLY point clouds")->required();
  match_cmd->add_option("--dump-stages", dump_dir, "Write per-stage PNGs to this directory");
  match_cmd->add_option("--out", match_out, "Write JSON lines here instead of stdout");

  auto* evaluate = app.add_subcommand("evaluate", "Confusion matrix and accuracy metrics (CSV + JSON)");
  BundleOptions eval_bundle;
  PipelineOptions eval_opts;
  bool synthetic = false;
  std::string labels, targets_dir, sigmas = "0", prefix;
  int trials = 1;
  evaluate->add_flag("--synthetic", synthetic, "Noise experiment on the built-in synthetic window models");
  evaluate->add_option("--bundle", eval_bundle.bundle, "Bundle written by train")->check(CLI::ExistingFile);
  evaluate->add_option("--labels", labels, "CSV of filename,label");
  evaluate->add_option("--targets", targets_dir, "Target directory; every XYZ/PLY in it must be labelled");
  evaluate->add_option("--sigmas", sigmas, "Comma-separated noise levels (fraction of bbox diagonal)");
  evaluate->add_option("--trials", trials, "Noise trials per sigma");
  evaluate->add_option("--out", prefix, "Write PREFIX.csv and PREFIX.json");
  eval_opts.attach(evaluate);

  auto* suggest = app.add_subcommand("suggest-n", "Clustering sweep over candidate codebook sizes (report only)");
  std::string suggest_dir, candidates = "10,25,50,100";
  bool suggest_synthetic = false;
  PipelineOptions suggest_opts;
  suggest->add_option("MODEL_DIR", suggest_dir, "Directory with OBJ/MTL models");
  suggest->add_flag("--synthetic", suggest_synthetic, "Use the built-in synthetic window models");
  suggest->add_option("--candidates", candidates, "Comma-separated cluster counts");
  suggest_opts.attach(suggest);

  auto* synth = app.add_subcommand("synth-models", "Write the synthetic window models as OBJ/MTL");
  std::string synth_dir;
  synth->add_option("DIR", synth_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(model_dir, train_opts, bundle_out, out);
    if (match_cmd->parsed()) return cmd_match(match_opts, targets, dump_dir, match_out, out, err);
    if (evaluate->parsed()) {
      if (synthetic) {
        if (!eval_bundle.bundle.empty() || !labels.empty() || !targets_dir.empty())
          throw UsageError("--synthetic does not take --bundle, --labels or --targets");
        return cmd_evaluate_synthetic(eval_opts, sigmas, trials, prefix, out);
      }
      if (eval_bundle.bundle.empty() || labels.empty()) throw UsageError("evaluate needs --bundle and --labels (or --synthetic)");
      for (const char* flag : {"--config", "--seed", "--features", "--dense", "--stride", "--feature-stage", "--hog-weight",
                               "--clusters", "--metric", "--sigmas", "--trials"})
        if (evaluate->count(flag) > 0) throw UsageError(std::string(flag) + " only applies with --synthetic");
      if (evaluate->count("--distance")) eval_bundle.distance = eval_opts.overrides.at("matching.distance");
      if (evaluate->count("--jobs")) {
        PipelineConfig probe;
        try {
          apply_setting(probe, "jobs", eval_opts.overrides.at("jobs"));
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        eval_bundle.jobs = probe.jobs;
      }
      return cmd_evaluate_bundle(eval_bundle, labels, targets_dir, prefix, out);
    }
    if (suggest->parsed()) return cmd_suggest_n(suggest_dir, suggest_synthetic, suggest_opts, candidates, out);
    if (synth->parsed()) return cmd_synth_models(synth_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace facade
