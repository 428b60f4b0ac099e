#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fretish/expr.hpp"

namespace fretish {

/// Interval of naturals [lo, hi]; an empty `hi` means unbounded.
class Interval {
public:
  /// The default interval [0, +inf).
  Interval() = default;
  /// Throws ArgumentError when hi < lo.
  Interval(std::size_t lo, std::optional<std::size_t> hi);

  static Interval unbounded(std::size_t lo = 0) { return Interval(lo, std::nullopt); }
  static Interval closed(std::size_t lo, std::size_t hi) { return Interval(lo, hi); }

  std::size_t lo() const { return lo_; }
  const std::optional<std::size_t> &hi() const { return hi_; }
  bool is_unbounded() const { return !hi_.has_value(); }
  bool is_default() const { return lo_ == 0 && !hi_; }
  bool contains(std::size_t x) const { return lo_ <= x && (!hi_ || x <= *hi_); }

  bool operator==(const Interval &) const = default;

private:
  std::size_t lo_ = 0;
  std::optional<std::size_t> hi_;
};

/// Past-time MTL formula. Immutable; copies share structure.
///
/// Atoms only ever hold a variable or a comparison: `atom()` lifts the
/// connectives of a compound Boolean expression into formula connectives, so
/// every formula has a single AST shape.
class Formula {
public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Prev, Once, Historically, Since };

  static Formula top();
  static Formula bottom();
  static Formula atom(const BoolExpr &expr);
  static Formula negate(Formula operand);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula prev(Formula operand);
  static Formula once(Interval interval, Formula operand);
  static Formula historically(Interval interval, Formula operand);
  static Formula since(Interval interval, Formula lhs, Formula rhs);
  static Formula once(Formula operand) { return once(Interval{}, std::move(operand)); }
  static Formula historically(Formula operand) { return historically(Interval{}, std::move(operand)); }
  static Formula since(Formula lhs, Formula rhs) { return since(Interval{}, std::move(lhs), std::move(rhs)); }

  Kind kind() const;
  const BoolExpr &atom_expr() const;
  const Interval &interval() const;
  /// Operand of unary nodes; left operand of binary nodes.
  const Formula &lhs() const;
  const Formula &rhs() const;

  bool is_temporal_free() const;
  std::size_t size() const;

  /// Identity of the shared node; equal ids imply structural equality.
  const void *id() const { return node_.get(); }

  friend bool operator==(const Formula &a, const Formula &b);

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, Interval interval, std::vector<Formula> children);
  std::shared_ptr<const Node> node_;
};

/// Lifts a Boolean expression into formula connectives.
Formula lift(const BoolExpr &expr);

// Derived operators. These build plain AST nodes; there is no macro node.

/// Since-inclusive-required: (a S (a & b)).
Formula since_incl_required(const Formula &a, const Formula &b);
/// Since-inclusive-optional: O b -> (a S (a & b)).
Formula since_incl_optional(const Formula &a, const Formula &b);
/// Y^m a = O[m,m] a. Throws ArgumentError when m = 0.
Formula prev_pow(std::size_t m, const Formula &a);

enum class Sugar { SinceInclRequired, SinceInclOptional, PrevPow };

/// Uniform entry point for the derived operators. `m` is only read for PrevPow;
/// `b` is ignored for PrevPow.
Formula expand_sugar(Sugar kind, const Formula &a, const Formula &b = Formula::top(),
                     std::size_t m = 0);

/// Truth value of `f` at every index 0..n of `trace`.
std::vector<bool> evaluate_all(const Formula &f, const Trace &trace);

/// rho |=_t f. Throws RangeError when t > n, UnboundVariableError/TypeError
/// from atoms.
bool eval_at(const Formula &f, const Trace &trace, std::size_t t);

/// rho |= f, i.e. eval_at at the last index.
bool eval(const Formula &f, const Trace &trace);

struct FormatOptions {
  /// Print recognised derived forms as SI(a, b), SR(a, b), Y^m a, ftp,
  /// fim(m), lim(m), fnim(m), lnim(m), ffim(m), flim(m).
  bool macros = false;
};

/// Canonical text. `parse_formula(format_formula(f, o)) == f` for both macro
/// settings.
std::string format_formula(const Formula &f, FormatOptions options = {});

/// Parses canonical text, including the macro forms. Throws SyntaxError.
Formula parse_formula(const std::string &text);

} // namespace fretish
