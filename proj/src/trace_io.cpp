#include "fretish/trace_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "fretish/error.hpp"
#include "json_util.hpp"
#include "lexer.hpp"

namespace fretish {

namespace {

Rational exact_number(const std::string &text, const std::string &where) {
  try {
    detail::TokenStream ts(detail::tokenize(text));
    Rational value;
    if (!detail::parse_number(ts, value) || !ts.at_end())
      throw ValidationError(where + ": '" + text + "' is not a number");
    return value;
  } catch (const SyntaxError &) {
    throw ValidationError(where + ": '" + text + "' is not a number");
  }
}

std::string shortest_decimal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc())
    throw ValidationError("number out of range");
  return std::string(buf, end);
}

Value read_value(const nlohmann::json &j, const std::string &where) {
  if (j.is_boolean())
    return j.get<bool>();
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      throw ValidationError(where + ": integer out of range");
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_number_float())
    return exact_number(shortest_decimal(j.get<double>()), where);
  if (j.is_string())
    return exact_number(j.get<std::string>(), where);
  throw ValidationError(where + ": expected a Boolean or a number");
}

} // namespace

Trace parse_trace_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ValidationError(std::string("trace is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("steps"))
    throw ValidationError("trace must be an object with \"vars\" and \"steps\"");
  const auto &vars = doc["vars"];
  const auto &steps = doc["steps"];
  if (!vars.is_array() || !steps.is_array())
    throw ValidationError("\"vars\" and \"steps\" must be arrays");
  std::set<std::string> declared;
  for (const auto &v : vars) {
    if (!v.is_string())
      throw ValidationError("variable names must be strings");
    if (!declared.insert(v.get<std::string>()).second)
      throw ValidationError("variable '" + v.get<std::string>() + "' declared twice");
  }
  if (steps.empty())
    throw ValidationError("trace has no steps");
  std::vector<State> states;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto &step = steps[i];
    const std::string where = "step " + std::to_string(i);
    if (!step.is_object())
      throw ValidationError(where + ": expected an object");
    State s;
    for (const auto &[name, value] : step.items()) {
      if (!declared.count(name))
        throw ValidationError(where + ": variable '" + name + "' is not declared");
      s.set(name, read_value(value, where + ", variable '" + name + "'"));
    }
    for (const auto &name : declared)
      if (!s.contains(name))
        throw ValidationError(where + ": variable '" + name + "' is not bound");
    states.push_back(std::move(s));
  }
  return Trace(std::move(states));
}

Trace load_trace_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open trace file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trace_json(buf.str());
}

std::vector<std::string> trace_variables(const Trace &trace) {
  std::vector<std::string> out;
  for (const auto &[name, value] : trace[0].bindings())
    out.push_back(name);
  return out;
}

namespace detail {

nlohmann::ordered_json trace_json(const Trace &trace) {
  nlohmann::ordered_json doc;
  doc["vars"] = trace_variables(trace);
  auto steps = nlohmann::ordered_json::array();
  for (const auto &state : trace.steps()) {
    nlohmann::ordered_json step = nlohmann::ordered_json::object();
    for (const auto &[name, value] : state.bindings()) {
      if (const bool *b = std::get_if<bool>(&value)) {
        step[name] = *b;
      } else {
        const Rational &q = std::get<Rational>(value);
        if (q.denominator() == 1)
          step[name] = q.numerator();
        else
          step[name] = std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
      }
    }
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  return doc;
}

} // namespace detail

std::string trace_to_json(const Trace &trace) { return detail::trace_json(trace).dump(); }

} // namespace fretish
