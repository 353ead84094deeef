#include "facade/json_out.hpp"

#include <cmath>
#include <cstdio>

#include "facade/error.hpp"

namespace facade {
namespace {

void emit(const OrderedJson& j, std::string& out) {
  switch (j.type()) {
    case OrderedJson::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += OrderedJson(key).dump();
        out += ':';
        emit(value, out);
      }
      out += '}';
      break;
    }
    case OrderedJson::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        emit(value, out);
      }
      out += ']';
      break;
    }
    case OrderedJson::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw Error("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const OrderedJson& j) {
  std::string out;
  emit(j, out);
  return out;
}

}  // namespace facade
