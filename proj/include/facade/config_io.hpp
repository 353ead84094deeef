#pragma once

#include <filesystem>
#include <string>

#include "facade/pipeline.hpp"

namespace facade {

/// Canonical key/value document with [sections]; floats as %.17g so that
/// parse_config(emit_config(c)) == c.
std::string emit_config(const PipelineConfig& cfg);

/// Applies every `key = value` in `text` on top of `base`. Unknown keys and
/// malformed values raise ParseError.
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {}, const std::string& source = "config");
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Sets one dotted key ("prep.voxel_size") from its textual value.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

}  // namespace facade
