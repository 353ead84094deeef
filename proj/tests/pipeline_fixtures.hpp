#pragma once

#include <vector>

#include "facade/pipeline.hpp"
#include "facade/synthetic.hpp"

namespace facade::test {

inline std::vector<ModelCloud> synthetic_clouds(const PipelineConfig& cfg) {
  std::vector<ModelCloud> out;
  for (const auto& m : synthetic_window_models()) out.push_back({m.id, sample_model(m.mesh, m.id, cfg)});
  return out;
}

}  // namespace facade::test
