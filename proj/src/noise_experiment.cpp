#include "facade/noise_experiment.hpp"

#include <algorithm>
#include <bit>

#include "facade/json_out.hpp"
#include "facade/parallel.hpp"

namespace facade {

std::uint64_t noise_seed(std::uint64_t seed, const std::string& model_id, double sigma, int trial) {
  std::uint64_t s = mix_seed(seed, stable_hash(model_id));
  s = mix_seed(s, std::bit_cast<std::uint64_t>(sigma + 0.0));
  return mix_seed(s, static_cast<std::uint64_t>(trial));
}

std::vector<ReportEntry> run_noise_experiment(const std::vector<ModelCloud>& models, const Library& lib,
                                              const NoiseExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error("trials must be >= 1");
  if (models.empty()) throw Error("no models to evaluate");
  std::vector<std::string> classes;
  for (const auto& e : lib.entries) classes.push_back(e.model_id);
  for (const auto& m : models) {
    if (std::find(classes.begin(), classes.end(), m.id) == classes.end())
      throw Error("model '" + m.id + "' is not in the library");
  }

  std::vector<ReportEntry> out;
  for (std::size_t si = 0; si < cfg.sigmas.size(); ++si) {
    const double sigma = cfg.sigmas[si];
    if (!(sigma >= 0)) throw Error("noise sigma must be >= 0");
    const std::size_t n_tasks = models.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<std::string> predicted(n_tasks);
    parallel_for(n_tasks, cfg.jobs, [&](std::size_t t) {
      const int trial = static_cast<int>(t / models.size());
      const ModelCloud& m = models[t % models.size()];
      try {
        const PointCloud noisy = add_noise(m.cloud, {sigma, noise_seed(cfg.seed, m.id, sigma, trial)});
        predicted[t] = match(describe_cloud(noisy, lib), lib.entries, lib.config.distance).best();
      } catch (const std::exception& e) {
        throw Error("model '" + m.id + "', sigma " + format_double(sigma) + ", trial " + std::to_string(trial) + ": " +
                    e.what());
      }
    });
    ReportEntry entry{"sigma=" + format_double(sigma), {}, ConfusionMatrix(classes)};
    for (std::size_t t = 0; t < n_tasks; ++t) entry.confusion.accumulate(models[t % models.size()].id, predicted[t]);
    entry.metrics = metrics(entry.confusion);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace facade
