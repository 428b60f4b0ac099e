#include "fretish/codegen.hpp"

#include "fretish/error.hpp"
#include "fretish/semantics.hpp"

namespace fretish {

namespace {

using F = Formula;

F ftp() { return F::negate(F::prev(F::top())); }

F fim(const F &m) { return F::conj(m, F::disj(ftp(), F::prev(F::negate(m)))); }
F lim(const F &m) { return F::conj(F::negate(m), F::prev(m)); }

} // namespace

Formula point_formula(const PointOfInterest &p, const Mutation &mutation) {
  using K = PointOfInterest::Kind;
  if (p.kind == K::Ftp)
    return ftp();
  if (!p.mode)
    throw ArgumentError("point of interest needs a mode");
  const F m = F::atom(*p.mode);
  switch (p.kind) {
  case K::Ftp:
    break;
  case K::Fim:
    return fim(m);
  case K::Lim:
    return lim(m);
  case K::Fnim:
    return F::conj(F::negate(m), F::disj(ftp(), F::prev(m)));
  case K::Lnim:
    return F::conj(m, F::prev(F::negate(m)));
  case K::Ffim: {
    F never_before = F::prev(F::historically(F::negate(m)));
    if (mutation.ffim_without_ftp)
      return F::conj(fim(m), never_before);
    return F::conj(fim(m), F::disj(ftp(), never_before));
  }
  case K::Flim: {
    F l = lim(m);
    return F::conj(l, F::prev(F::historically(F::negate(l))));
  }
  }
  return ftp();
}

ScopeEndpoints scope_endpoints(const Scope &scope, const Mutation &mutation) {
  using K = Scope::Kind;
  using P = PointOfInterest::Kind;
  auto point = [&](P kind) { return point_formula({kind, scope.mode}, mutation); };
  if (scope.kind != K::Null && !scope.mode)
    throw ArgumentError(std::string("scope '") + to_string(scope.kind) + "' has no mode");
  switch (scope.kind) {
  case K::Null: return {point(P::Ftp), std::nullopt};
  case K::Before: return {point(P::Ftp), point(P::Ffim)};
  case K::After: return {point(P::Flim), std::nullopt};
  case K::In: return {point(P::Fim), point(P::Lim)};
  case K::NotIn:
  case K::OnlyIn: return {point(P::Fnim), point(P::Lnim)};
  case K::OnlyBefore: return {point(P::Ffim), std::nullopt};
  case K::OnlyAfter: return {point(P::Ftp), point(P::Flim)};
  }
  return {};
}

Formula trigger_formula(const BoolExpr &cond, const Formula &left) {
  const F c = F::atom(cond);
  return F::disj(F::conj(c, F::prev(F::negate(c))), F::conj(c, left));
}

Formula no_triggers_formula(const BoolExpr &cond, const Formula &left) {
  return since_incl_required(F::negate(F::atom(cond)), left);
}

Formula core_formula(const Timing &timing, const std::optional<BoolExpr> &cond,
                     const BoolExpr &res_expr, const Formula &left) {
  using K = Timing::Kind;
  const F res = F::atom(res_expr);
  const F not_res = F::negate(res);
  auto stop = [&] { return F::atom(*timing.stop); };
  if (timing.has_duration() && timing.duration == 0)
    throw ArgumentError("durations must be at least 1");

  if (!cond) {
    switch (timing.kind) {
    case K::Immediately:
      return F::implies(left, res);
    case K::Next:
      return F::implies(F::prev(left), res);
    case K::Always:
      return res;
    case K::Eventually:
      return F::negate(since_incl_required(not_res, left));
    case K::Until:
      return F::implies(since_incl_required(F::negate(stop()), left), res);
    case K::Before:
      return F::implies(stop(), F::conj(F::negate(left),
                                        F::negate(F::prev(since_incl_required(not_res, left)))));
    case K::For:
      return F::implies(F::once(Interval::closed(0, timing.duration), left), res);
    case K::Within:
      return F::implies(since_incl_required(not_res, left),
                        F::once(Interval::closed(0, timing.duration - 1), left));
    case K::Never:
    case K::After:
      break;
    }
  } else {
    const F trig = trigger_formula(*cond, left);
    const F no_trig = no_triggers_formula(*cond, left);
    switch (timing.kind) {
    case K::Immediately:
      return F::implies(trig, res);
    case K::Next:
      return F::implies(F::prev(trig), F::disj(res, left));
    case K::Always:
      return F::disj(no_trig, since_incl_required(res, trig));
    case K::Eventually:
      return F::disj(no_trig, F::negate(since_incl_required(not_res, trig)));
    case K::Until:
      return F::disj(no_trig, F::implies(since_incl_required(F::negate(stop()), trig), res));
    case K::Before:
      return F::implies(
          stop(), F::disj(no_trig, F::conj(F::conj(F::negate(left), F::negate(trig)),
                                           F::negate(F::prev(since_incl_required(not_res, trig))))));
    case K::For:
      return F::implies(F::once(Interval::closed(0, timing.duration), trig), F::disj(no_trig, res));
    case K::Within:
      return F::implies(prev_pow(timing.duration, F::conj(trig, not_res)),
                        F::once(Interval::closed(0, timing.duration - 1), F::disj(left, res)));
    case K::Never:
    case K::After:
      break;
    }
  }
  throw ArgumentError(std::string("no core formula for timing '") + to_string(timing.kind) + "'");
}

Formula base_form(const Timing &timing, const std::optional<BoolExpr> &cond, const BoolExpr &res,
                  const Formula &left, const Formula &right) {
  const F core = core_formula(timing, cond, res, left);
  if (timing.kind == Timing::Kind::Eventually)
    return F::implies(right, F::prev(core));
  return F::implies(right, F::prev(since_incl_optional(core, left)));
}

Formula base_form_last(const Timing &timing, const std::optional<BoolExpr> &cond,
                       const BoolExpr &res, const Formula &left, const Mutation &mutation) {
  const F core = core_formula(timing, cond, res, left);
  if (timing.kind == Timing::Kind::Eventually)
    return mutation.eventually_without_guard ? core : F::implies(F::once(left), core);
  return since_incl_optional(core, left);
}

Formula gen_form(const Requirement &r, const Mutation &mutation) {
  if (r.timing.kind == Timing::Kind::After && !is_only(r.scope)) {
    Requirement hold_off = r;
    hold_off.timing = Timing::bounded(Timing::Kind::For, r.timing.duration);
    hold_off.response = BoolExpr::negate(r.response);
    Requirement respond = r;
    respond.timing = Timing::bounded(Timing::Kind::Within, r.timing.duration + 1);
    return F::conj(gen_form(hold_off, mutation), gen_form(respond, mutation));
  }
  auto [timing, res] = effective_obligation(r);
  const ScopeEndpoints ends = scope_endpoints(r.scope, mutation);
  const F last = base_form_last(timing, r.condition, res, ends.left, mutation);
  if (!ends.right)
    return last;
  const F base = base_form(timing, r.condition, res, ends.left, *ends.right);
  return F::conj(F::historically(F::disj(base, ftp())),
                 F::implies(since_incl_required(F::negate(*ends.right), ends.left), last));
}

} // namespace fretish
