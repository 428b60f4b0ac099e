#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fretish/expr.hpp"
#include "fretish/requirement.hpp"

namespace fretish {

/// Closed, bounded interval [lo, hi] of time indices.
struct Span {
  std::size_t lo = 0;
  std::size_t hi = 0;

  bool contains(std::size_t x) const { return lo <= x && x <= hi; }
  bool operator==(const Span &) const = default;
};

std::string to_string(const Span &span);

/// Ordered list of disjoint, non-adjacent closed intervals.
class Oli {
public:
  /// The empty list.
  Oli() = default;
  /// Throws ArgumentError unless the spans are ordered, well-formed and
  /// separated by at least one index.
  explicit Oli(std::vector<Span> spans);

  /// Maximal runs of true entries.
  static Oli from_bits(const std::vector<bool> &bits);

  const std::vector<Span> &spans() const { return spans_; }
  bool empty() const { return spans_.empty(); }
  std::size_t size() const { return spans_.size(); }
  const Span &operator[](std::size_t i) const { return spans_[i]; }
  bool contains(std::size_t x) const;
  /// Every index is <= n.
  bool bounded_by(std::size_t n) const { return empty() || spans_.back().hi <= n; }

  bool operator==(const Oli &) const = default;

private:
  std::vector<Span> spans_;
};

/// "[2,7] [16,21]", or "empty".
std::string to_string(const Oli &oli);

/// Indices of `trace` where `psi` holds.
Oli bool_sem(const BoolExpr &psi, const Trace &trace);

/// Indices in [0, n] not covered by `l`. Throws ArgumentError when `l` is not
/// bounded by n.
Oli oli_complement(const Oli &l, std::size_t n);

Oli scope_sem(const Scope &scope, const Trace &trace);

/// lb(I) for an absent condition; otherwise the first index of each condition
/// run that meets I, clamped to lb(I).
std::set<std::size_t> triggers(const std::optional<BoolExpr> &cond, const Trace &trace,
                               const Span &interval);

std::set<std::size_t> stops(const BoolExpr &stop, const Trace &trace, const Span &interval);

/// Least stop strictly after t, or ub(I)+1 when there is none.
std::size_t first_stop(const BoolExpr &stop, std::size_t t, const Trace &trace,
                       const Span &interval);

/// Does `interval` belong to the semantics of `timing` for this condition and
/// response? Never and After are expanded to their defining clauses.
bool timing_holds(const Timing &timing, const std::optional<BoolExpr> &cond, const BoolExpr &res,
                  const Trace &trace, const Span &interval);

/// Always/Eventually, Within/For and Before/Until swap; Immediately and Next
/// map to themselves. Throws UnsupportedError for Never and After.
Timing dual_timing(const Timing &timing);

enum class EmptyScopePolicy { Vacuous, Literal };

const char *to_string(EmptyScopePolicy policy);

/// Timing and response actually checked on the scope intervals: Never is
/// rewritten to Always with the negated response, and only-scopes use the
/// dual timing with the negated response. Throws UnsupportedError for an
/// only-scope with After timing.
std::pair<Timing, BoolExpr> effective_obligation(const Requirement &r);

/// Trace membership in the requirement's semantics. An empty scope is a
/// member under Vacuous and not under Literal.
bool fret_sem_member(const Requirement &r, const Trace &trace,
                     EmptyScopePolicy policy = EmptyScopePolicy::Vacuous);

/// Line-oriented account of the membership decision: mode, scope and
/// response OLIs, per-interval triggers and verdicts, and a final
/// `member: true|false` line.
std::string explain_membership(const Requirement &r, const Trace &trace,
                               EmptyScopePolicy policy = EmptyScopePolicy::Vacuous);

} // namespace fretish
