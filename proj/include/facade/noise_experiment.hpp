#pragma once

#include <cstdint>
#include <vector>

#include "facade/eval.hpp"
#include "facade/pipeline.hpp"

namespace facade {

struct NoiseExperimentConfig {
  std::vector<double> sigmas;
  int trials = 1;
  std::uint64_t seed = 0;
  int jobs = 0;
};

/// Seed of the noise added to `model_id` at (sigma, trial); independent of
/// which other sigmas are evaluated.
std::uint64_t noise_seed(std::uint64_t seed, const std::string& model_id, double sigma, int trial);

/// For every sigma and trial each clean model cloud is perturbed, run through
/// the full pipeline and matched against the noise-free library. One entry per
/// sigma, labelled "sigma=<value>".
std::vector<ReportEntry> run_noise_experiment(const std::vector<ModelCloud>& models, const Library& lib,
                                              const NoiseExperimentConfig& cfg);

}  // namespace facade
