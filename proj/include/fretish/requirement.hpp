#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fretish/expr.hpp"

namespace fretish {

/// Where in a trace a requirement is enforced.
struct Scope {
  enum class Kind { Null, In, NotIn, Before, After, OnlyAfter, OnlyBefore, OnlyIn };

  Kind kind = Kind::Null;
  /// Present for every kind except Null.
  std::optional<BoolExpr> mode;

  static Scope global() { return {}; }
  static Scope make(Kind kind, BoolExpr mode) { return {kind, std::move(mode)}; }

  bool operator==(const Scope &) const = default;
};

/// The temporal obligation between a trigger and the response.
struct Timing {
  enum class Kind { Immediately, Next, Never, Eventually, Always, Within, For, After, Until, Before };

  Kind kind = Kind::Eventually;
  /// Within/For/After only; always >= 1.
  std::size_t duration = 0;
  /// Until/Before only.
  std::optional<BoolExpr> stop;

  static Timing simple(Kind kind) { return {kind, 0, std::nullopt}; }
  static Timing bounded(Kind kind, std::size_t d) { return {kind, d, std::nullopt}; }
  static Timing stopped(Kind kind, BoolExpr stop) { return {kind, 0, std::move(stop)}; }

  bool has_duration() const {
    return kind == Kind::Within || kind == Kind::For || kind == Kind::After;
  }
  bool has_stop() const { return kind == Kind::Until || kind == Kind::Before; }

  bool operator==(const Timing &) const = default;
};

/// <scope, timing, condition, response>. The component named in the surface
/// text carries no meaning and is not stored.
struct Requirement {
  Scope scope;
  std::optional<BoolExpr> condition;
  Timing timing;
  BoolExpr response = BoolExpr::constant(true);

  bool operator==(const Requirement &) const = default;
};

bool is_only(const Scope &scope);

/// Lower-case keyword: "null", "in", "notin", "before", "after", "onlyAfter",
/// "onlyBefore", "onlyIn".
const char *to_string(Scope::Kind kind);
/// Lower-case keyword: "immediately", "next", ..., "before".
const char *to_string(Timing::Kind kind);

inline constexpr Scope::Kind kAllScopes[] = {
    Scope::Kind::Null,      Scope::Kind::In,         Scope::Kind::NotIn,  Scope::Kind::Before,
    Scope::Kind::After,     Scope::Kind::OnlyAfter,  Scope::Kind::OnlyBefore, Scope::Kind::OnlyIn};
inline constexpr Timing::Kind kAllTimings[] = {
    Timing::Kind::Immediately, Timing::Kind::Next,  Timing::Kind::Never,  Timing::Kind::Eventually,
    Timing::Kind::Always,      Timing::Kind::Within, Timing::Kind::For,   Timing::Kind::After,
    Timing::Kind::Until,       Timing::Kind::Before};

/// Parses one requirement:
///
///   [scope ,] [when boolexpr [,]] the ident shall [timing] satisfy boolexpr
///
/// Keywords are case-insensitive. Omitted scope is Null, omitted timing is
/// Eventually, omitted condition is absent. Throws SyntaxError or
/// ValidationError (zero duration).
Requirement parse_requirement(const std::string &text);

/// Parses a file body: one requirement per non-blank line, `#` comments.
/// Syntax errors report the line within `text`.
std::vector<Requirement> parse_requirements(const std::string &text);

/// Canonical surface text; parse_requirement inverts it exactly.
std::string unparse_requirement(const Requirement &r);

} // namespace fretish
