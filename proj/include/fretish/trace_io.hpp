#pragma once

#include <string>
#include <vector>

#include "fretish/expr.hpp"

namespace fretish {

/// Reads the JSON trace format
///
///   {"vars": ["m", "r"], "steps": [{"m": true, "r": false}, ...]}
///
/// Values are Booleans, numbers (decimals are read exactly, from their
/// shortest round-trip text) or strings holding an exact fraction "a/b".
/// Every step must bind exactly the declared variables. Throws
/// ValidationError.
Trace parse_trace_json(const std::string &text);

Trace load_trace_file(const std::string &path);

/// Inverse of parse_trace_json. Non-integer rationals are written as "a/b"
/// strings.
std::string trace_to_json(const Trace &trace);

/// Names bound in the first state, sorted.
std::vector<std::string> trace_variables(const Trace &trace);

} // namespace fretish
