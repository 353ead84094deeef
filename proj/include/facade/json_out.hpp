#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace facade {

using OrderedJson = nlohmann::ordered_json;

/// Compact JSON with every floating-point number printed as %.17g, so output
/// is byte-stable and round-trips doubles exactly. Keys keep insertion order.
std::string dump_json(const OrderedJson& j);

/// A double formatted as %.17g.
std::string format_double(double v);

}  // namespace facade
