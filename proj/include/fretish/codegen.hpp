#pragma once

#include <optional>

#include "fretish/mtl.hpp"
#include "fretish/requirement.hpp"

namespace fretish {

/// Characteristic points of a mode along a trace.
struct PointOfInterest {
  enum class Kind { Ftp, Fim, Lim, Fnim, Lnim, Ffim, Flim };

  Kind kind = Kind::Ftp;
  /// Absent only for Ftp.
  std::optional<BoolExpr> mode;

  bool operator==(const PointOfInterest &) const = default;
};

/// Hooks that reintroduce known translation bugs, for mutation testing of
/// the differential harness. The default value generates correct formulas.
struct Mutation {
  /// ffim(m) = fim(m) & Y H !m, i.e. without the ftp disjunct.
  bool ffim_without_ftp = false;
  /// Eventually's last-interval base formula without the O left guard.
  bool eventually_without_guard = false;

  bool operator==(const Mutation &) const = default;
};

Formula point_formula(const PointOfInterest &p, const Mutation &mutation = {});

/// Left endpoint and optional right endpoint of the scope intervals.
struct ScopeEndpoints {
  Formula left = Formula::top();
  std::optional<Formula> right;
};

ScopeEndpoints scope_endpoints(const Scope &scope, const Mutation &mutation = {});

/// (cond & Y !cond) | (cond & left)
Formula trigger_formula(const BoolExpr &cond, const Formula &left);

/// SR(!cond, left)
Formula no_triggers_formula(const BoolExpr &cond, const Formula &left);

/// Per-point obligation. Throws ArgumentError for Never and After, which are
/// rewritten before reaching here.
Formula core_formula(const Timing &timing, const std::optional<BoolExpr> &cond,
                     const BoolExpr &res, const Formula &left);

/// right -> Y core for Eventually; right -> Y SI(core, left) otherwise.
Formula base_form(const Timing &timing, const std::optional<BoolExpr> &cond, const BoolExpr &res,
                  const Formula &left, const Formula &right);

/// O left -> core for Eventually; SI(core, left) otherwise.
Formula base_form_last(const Timing &timing, const std::optional<BoolExpr> &cond,
                       const BoolExpr &res, const Formula &left, const Mutation &mutation = {});

/// Whole-trace formula for a requirement. Never becomes Always with the
/// negated response; After(d) becomes the conjunction of For(d) with the
/// negated response and Within(d+1); only-scopes use the dual timing with
/// the negated response. Throws UnsupportedError for an only-scope with
/// After timing.
Formula gen_form(const Requirement &r, const Mutation &mutation = {});

} // namespace fretish
