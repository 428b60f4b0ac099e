#pragma once

#include <json.hpp>

#include "fretish/expr.hpp"

namespace fretish::detail {

nlohmann::ordered_json trace_json(const Trace &trace);

} // namespace fretish::detail
