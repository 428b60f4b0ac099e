#include "fretish/semantics.hpp"

#include <algorithm>
#include <sstream>

#include "fretish/error.hpp"

namespace fretish {

std::string to_string(const Span &span) {
  return "[" + std::to_string(span.lo) + "," + std::to_string(span.hi) + "]";
}

Oli::Oli(std::vector<Span> spans) : spans_(std::move(spans)) {
  for (std::size_t i = 0; i < spans_.size(); ++i) {
    if (spans_[i].hi < spans_[i].lo)
      throw ArgumentError("OLI interval " + to_string(spans_[i]) + " is empty");
    if (i > 0 && spans_[i].lo <= spans_[i - 1].hi + 1)
      throw ArgumentError("OLI intervals " + to_string(spans_[i - 1]) + " and " +
                          to_string(spans_[i]) + " overlap or touch");
  }
}

Oli Oli::from_bits(const std::vector<bool> &bits) {
  std::vector<Span> spans;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i])
      continue;
    if (!spans.empty() && spans.back().hi + 1 == i)
      spans.back().hi = i;
    else
      spans.push_back({i, i});
  }
  Oli out;
  out.spans_ = std::move(spans);
  return out;
}

bool Oli::contains(std::size_t x) const {
  auto it = std::partition_point(spans_.begin(), spans_.end(),
                                 [x](const Span &s) { return s.hi < x; });
  return it != spans_.end() && it->lo <= x;
}

std::string to_string(const Oli &oli) {
  if (oli.empty())
    return "empty";
  std::string out;
  for (const auto &s : oli.spans()) {
    if (!out.empty())
      out += ' ';
    out += to_string(s);
  }
  return out;
}

namespace {

std::vector<bool> holds_at(const BoolExpr &psi, const Trace &trace) {
  std::vector<bool> bits(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i)
    bits[i] = psi.evaluate(trace[i], i);
  return bits;
}

void check_interval(const Span &interval, const Trace &trace) {
  if (interval.hi < interval.lo || interval.hi > trace.last())
    throw ArgumentError("interval " + to_string(interval) + " is not within the trace [0," +
                        std::to_string(trace.last()) + "]");
}

// First index of every run of `oli` meeting I, clamped to lb(I).
std::set<std::size_t> run_starts(const Oli &oli, const Span &interval) {
  std::set<std::size_t> out;
  for (const auto &s : oli.spans())
    if (s.lo <= interval.hi && interval.lo <= s.hi)
      out.insert(std::max(s.lo, interval.lo));
  return out;
}

BoolExpr negated(const BoolExpr &e) { return BoolExpr::negate(e); }

struct Obligation {
  const std::set<std::size_t> &trig;
  const std::vector<bool> &res;
  const Span &I;

  bool res_at(std::size_t x) const { return res[x]; }

  bool immediately() const {
    return std::all_of(trig.begin(), trig.end(), [&](std::size_t t) { return res_at(t); });
  }

  bool next() const {
    return std::all_of(trig.begin(), trig.end(),
                       [&](std::size_t t) { return !I.contains(t + 1) || res_at(t + 1); });
  }

  bool always() const {
    for (std::size_t j = *trig.begin(); j <= I.hi; ++j)
      if (!res_at(j))
        return false;
    return true;
  }

  bool eventually() const {
    for (std::size_t j = *trig.rbegin(); j <= I.hi; ++j)
      if (res_at(j))
        return true;
    return false;
  }

  bool within(std::size_t d) const {
    for (std::size_t t : trig) {
      if (!I.contains(t + d))
        continue;
      bool found = false;
      for (std::size_t k = 0; k <= d && !found; ++k)
        found = res_at(t + k);
      if (!found)
        return false;
    }
    return true;
  }

  bool for_(std::size_t d) const {
    for (std::size_t t : trig)
      for (std::size_t k = 0; k <= d; ++k)
        if (I.contains(t + k) && !res_at(t + k))
          return false;
    return true;
  }

  // `stop_after(t)` is the index that ends the obligation started at t.
  template <class StopAfter> bool until(StopAfter stop_after) const {
    for (std::size_t t : trig)
      for (std::size_t x = t; x < stop_after(t); ++x)
        if (!res_at(x))
          return false;
    return true;
  }

  template <class StopAfter> bool before(StopAfter stop_after) const {
    for (std::size_t t : trig) {
      std::size_t s = stop_after(t);
      if (s == I.hi + 1)
        continue;
      bool found = false;
      for (std::size_t x = t; x < s && !found; ++x)
        found = res_at(x);
      if (!found)
        return false;
    }
    return true;
  }
};

} // namespace

Oli bool_sem(const BoolExpr &psi, const Trace &trace) { return Oli::from_bits(holds_at(psi, trace)); }

Oli oli_complement(const Oli &l, std::size_t n) {
  if (!l.bounded_by(n))
    throw ArgumentError("OLI " + to_string(l) + " is not bounded by " + std::to_string(n));
  std::vector<Span> out;
  std::size_t next = 0;
  for (const auto &s : l.spans()) {
    if (s.lo > next)
      out.push_back({next, s.lo - 1});
    next = s.hi + 1;
  }
  if (next <= n)
    out.push_back({next, n});
  return Oli(std::move(out));
}

Oli scope_sem(const Scope &scope, const Trace &trace) {
  using K = Scope::Kind;
  const std::size_t n = trace.last();
  if (scope.kind == K::Null)
    return Oli({{0, n}});
  if (!scope.mode)
    throw ArgumentError(std::string("scope '") + to_string(scope.kind) + "' has no mode");
  const Oli mode = bool_sem(*scope.mode, trace);
  switch (scope.kind) {
  case K::Null:
    break;
  case K::In:
    return mode;
  case K::NotIn:
  case K::OnlyIn:
    return oli_complement(mode, n);
  case K::After:
    if (mode.empty() || mode[0].hi == n)
      return Oli();
    return Oli({{mode[0].hi + 1, n}});
  case K::Before:
    // mode never holds: the whole trace precedes it
    if (mode.empty())
      return Oli({{0, n}});
    if (mode[0].lo == 0)
      return Oli();
    return Oli({{0, mode[0].lo - 1}});
  case K::OnlyAfter:
    if (mode.empty())
      return Oli({{0, n}});
    return Oli({{0, mode[0].hi}});
  case K::OnlyBefore:
    if (mode.empty())
      return Oli();
    return Oli({{mode[0].lo, n}});
  }
  return Oli();
}

std::set<std::size_t> triggers(const std::optional<BoolExpr> &cond, const Trace &trace,
                               const Span &interval) {
  check_interval(interval, trace);
  if (!cond)
    return {interval.lo};
  return run_starts(bool_sem(*cond, trace), interval);
}

std::set<std::size_t> stops(const BoolExpr &stop, const Trace &trace, const Span &interval) {
  check_interval(interval, trace);
  return run_starts(bool_sem(stop, trace), interval);
}

std::size_t first_stop(const BoolExpr &stop, std::size_t t, const Trace &trace,
                       const Span &interval) {
  if (!interval.contains(t))
    throw ArgumentError("index " + std::to_string(t) + " is outside " + to_string(interval));
  auto all = stops(stop, trace, interval);
  auto it = all.upper_bound(t);
  return it == all.end() ? interval.hi + 1 : *it;
}

bool timing_holds(const Timing &timing, const std::optional<BoolExpr> &cond, const BoolExpr &res,
                  const Trace &trace, const Span &interval) {
  using K = Timing::Kind;
  if (timing.kind == K::Never)
    return timing_holds(Timing::simple(K::Always), cond, negated(res), trace, interval);
  if (timing.kind == K::After) {
    if (timing.duration == 0)
      throw ArgumentError("after timing needs a duration of at least 1");
    return timing_holds(Timing::bounded(K::For, timing.duration), cond, negated(res), trace,
                        interval) &&
           timing_holds(Timing::bounded(K::Within, timing.duration + 1), cond, res, trace,
                        interval);
  }
  const auto trig = triggers(cond, trace, interval);
  if (trig.empty())
    return true;
  const auto res_bits = holds_at(res, trace);
  Obligation ob{trig, res_bits, interval};

  // The obligation from trigger t ends at the first index >= t in I where
  // stop holds (a stop already in progress at t counts), else at ub(I)+1.
  std::vector<bool> stop_bits;
  if (timing.has_stop())
    stop_bits = holds_at(*timing.stop, trace);
  auto stop_after = [&](std::size_t t) {
    for (std::size_t x = t; x <= interval.hi; ++x)
      if (stop_bits[x])
        return x;
    return interval.hi + 1;
  };

  switch (timing.kind) {
  case K::Immediately: return ob.immediately();
  case K::Next: return ob.next();
  case K::Always: return ob.always();
  case K::Eventually: return ob.eventually();
  case K::Within:
  case K::For:
    if (timing.duration == 0)
      throw ArgumentError(std::string(to_string(timing.kind)) +
                          " timing needs a duration of at least 1");
    return timing.kind == K::Within ? ob.within(timing.duration) : ob.for_(timing.duration);
  case K::Until: return ob.until(stop_after);
  case K::Before:
    if (stops(*timing.stop, trace, interval).empty())
      return true;
    return ob.before(stop_after);
  case K::Never:
  case K::After:
    break;
  }
  return true;
}

Timing dual_timing(const Timing &timing) {
  using K = Timing::Kind;
  switch (timing.kind) {
  case K::Always: return Timing::simple(K::Eventually);
  case K::Eventually: return Timing::simple(K::Always);
  case K::Within: return Timing::bounded(K::For, timing.duration);
  case K::For: return Timing::bounded(K::Within, timing.duration);
  case K::Before: return Timing::stopped(K::Until, *timing.stop);
  case K::Until: return Timing::stopped(K::Before, *timing.stop);
  case K::Immediately:
  case K::Next: return timing;
  case K::Never:
  case K::After: break;
  }
  throw UnsupportedError(std::string("timing '") + to_string(timing.kind) + "' has no dual");
}

const char *to_string(EmptyScopePolicy policy) {
  return policy == EmptyScopePolicy::Vacuous ? "vacuous" : "literal";
}

std::pair<Timing, BoolExpr> effective_obligation(const Requirement &r) {
  Timing timing = r.timing;
  BoolExpr res = r.response;
  if (timing.kind == Timing::Kind::Never) {
    timing = Timing::simple(Timing::Kind::Always);
    res = negated(res);
  }
  if (!is_only(r.scope))
    return {timing, res};
  if (timing.kind == Timing::Kind::After)
    throw UnsupportedError(std::string("scope '") + to_string(r.scope.kind) +
                           "' cannot be combined with after timing");
  return {dual_timing(timing), negated(res)};
}

bool fret_sem_member(const Requirement &r, const Trace &trace, EmptyScopePolicy policy) {
  auto [timing, res] = effective_obligation(r);
  const Oli scope = scope_sem(r.scope, trace);
  if (scope.empty())
    return policy == EmptyScopePolicy::Vacuous;
  return std::all_of(scope.spans().begin(), scope.spans().end(), [&](const Span &I) {
    return timing_holds(timing, r.condition, res, trace, I);
  });
}

namespace {

std::string scope_label(const Scope &s) {
  using K = Scope::Kind;
  switch (s.kind) {
  case K::Null: return "null";
  case K::In: return "in mode";
  case K::NotIn: return "notin mode";
  case K::Before: return "before mode";
  case K::After: return "after mode";
  case K::OnlyAfter: return "only after mode";
  case K::OnlyBefore: return "only before mode";
  case K::OnlyIn: return "only in mode";
  }
  return "?";
}

std::string index_set(const std::set<std::size_t> &s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin())
      out += ",";
    out += std::to_string(*it);
  }
  return out + "}";
}

} // namespace

std::string explain_membership(const Requirement &r, const Trace &trace, EmptyScopePolicy policy) {
  std::ostringstream out;
  auto [timing, res] = effective_obligation(r);
  if (r.scope.mode)
    out << "mode: " << to_string(bool_sem(*r.scope.mode, trace)) << "\n";
  if (r.condition)
    out << "cond: " << to_string(bool_sem(*r.condition, trace)) << "\n";
  if (timing.stop)
    out << "stop: " << to_string(bool_sem(*timing.stop, trace)) << "\n";
  out << "res: " << to_string(bool_sem(r.response, trace)) << "\n";
  const Oli scope = scope_sem(r.scope, trace);
  out << "scope(" << scope_label(r.scope) << "): " << to_string(scope) << "\n";
  std::string checked = to_string(timing.kind);
  if (timing.has_duration())
    checked += " " + std::to_string(timing.duration);
  if (timing.stop)
    checked += " " + to_string(*timing.stop);
  out << "checked: " << checked << " satisfy " << to_string(res) << "\n";
  bool member = true;
  for (const auto &I : scope.spans()) {
    const std::string tag = "(I=" + to_string(I) + ")";
    out << "triggers" << tag << ": " << index_set(triggers(r.condition, trace, I)) << "\n";
    if (timing.stop)
      out << "stops" << tag << ": " << index_set(stops(*timing.stop, trace, I)) << "\n";
    bool ok = timing_holds(timing, r.condition, res, trace, I);
    out << "holds" << tag << ": " << (ok ? "true" : "false") << "\n";
    member = member && ok;
  }
  if (scope.empty()) {
    member = policy == EmptyScopePolicy::Vacuous;
    out << "member: " << (member ? "true" : "false") << " (empty scope)\n";
  } else {
    out << "member: " << (member ? "true" : "false") << "\n";
  }
  return out.str();
}

} // namespace fretish
