#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fretish {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based location and the set of tokens
/// the parser would have accepted there.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t line, std::size_t column, std::string found,
              std::vector<std::string> expected);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &found() const { return found_; }
  const std::vector<std::string> &expected() const { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string found_;
  std::vector<std::string> expected_;
};

/// Well-formed syntax carrying an invalid value (e.g. a zero duration).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Numeric/Boolean operand mismatch.
class TypeError : public Error {
public:
  using Error::Error;
};

/// A variable referenced by an expression is not bound at some trace index.
class UnboundVariableError : public Error {
public:
  UnboundVariableError(std::string variable, std::size_t index);

  const std::string &variable() const { return variable_; }
  std::size_t index() const { return index_; }

private:
  std::string variable_;
  std::size_t index_;
};

/// Time index outside the trace.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Invalid argument to an operation (e.g. Y^0, an OLI not bounded by n).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A construct with no defined meaning (only-scope combined with after-timing,
/// the dual of never/after).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

} // namespace fretish
