#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace fretish {

using Rational = boost::rational<std::int64_t>;

/// A variable's value in one state: Boolean or an exact rational number.
using Value = std::variant<bool, Rational>;

/// Variable bindings at a single time point.
class State {
public:
  State() = default;
  State(std::initializer_list<std::pair<const std::string, Value>> init)
      : bindings_(init) {}

  void set(const std::string &name, Value value) { bindings_[name] = value; }
  const Value *find(const std::string &name) const;
  bool contains(const std::string &name) const { return find(name) != nullptr; }
  const std::map<std::string, Value> &bindings() const { return bindings_; }

  bool operator==(const State &) const = default;

private:
  std::map<std::string, Value> bindings_;
};

/// Finite, non-empty sequence of states indexed 0..n.
class Trace {
public:
  /// Throws ArgumentError when `steps` is empty.
  explicit Trace(std::vector<State> steps);

  std::size_t size() const { return steps_.size(); }
  std::size_t last() const { return steps_.size() - 1; }
  const State &operator[](std::size_t i) const { return steps_[i]; }
  const std::vector<State> &steps() const { return steps_; }

  bool operator==(const Trace &) const = default;

private:
  std::vector<State> steps_;
};

enum class CompareOp { Less, LessEq, Equal, NotEqual, GreaterEq, Greater };

const char *to_string(CompareOp op);

/// Operand of a comparison: a numeric variable or a literal.
using Operand = std::variant<std::string, Rational>;

/// Non-temporal Boolean expression over trace variables. Immutable; copies
/// share structure.
class BoolExpr {
public:
  enum class Kind { Constant, Variable, Compare, Not, And, Or, Implies };

  static BoolExpr constant(bool value);
  static BoolExpr variable(std::string name);
  static BoolExpr compare(Operand lhs, CompareOp op, Operand rhs);
  static BoolExpr negate(BoolExpr operand);
  static BoolExpr conj(BoolExpr lhs, BoolExpr rhs);
  static BoolExpr disj(BoolExpr lhs, BoolExpr rhs);
  static BoolExpr implies(BoolExpr lhs, BoolExpr rhs);

  Kind kind() const;
  bool constant_value() const;
  const std::string &name() const;
  const Operand &compare_lhs() const;
  const Operand &compare_rhs() const;
  CompareOp compare_op() const;
  /// Operand of Not, left side of binary connectives.
  const BoolExpr &lhs() const;
  const BoolExpr &rhs() const;

  /// Evaluates under `state`. Throws UnboundVariableError (reported at
  /// `index`) or TypeError.
  bool evaluate(const State &state, std::size_t index = 0) const;

  void collect_variables(std::set<std::string> &out) const;

  friend bool operator==(const BoolExpr &a, const BoolExpr &b);

private:
  struct Node;
  explicit BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Canonical text, using the operator precedence ! > comparison > & > | > ->.
std::string to_string(const BoolExpr &expr);
std::string to_string(const Rational &value);

/// Parses a Boolean expression. Throws SyntaxError / TypeError.
BoolExpr parse_bool_expr(const std::string &text);

} // namespace fretish
