#include "fretish/mtl.hpp"

#include <unordered_map>

#include "fretish/error.hpp"

namespace fretish {

Interval::Interval(std::size_t lo, std::optional<std::size_t> hi) : lo_(lo), hi_(hi) {
  if (hi_ && *hi_ < lo_)
    throw ArgumentError("interval [" + std::to_string(lo) + "," + std::to_string(*hi) +
                        "] has an upper bound below its lower bound");
}

struct Formula::Node {
  Kind kind;
  std::optional<BoolExpr> atom;
  Interval interval;
  std::vector<Formula> children;
  std::size_t size = 1;
  bool temporal_free = true;
};

namespace {

bool is_temporal(Formula::Kind k) {
  return k == Formula::Kind::Prev || k == Formula::Kind::Once ||
         k == Formula::Kind::Historically || k == Formula::Kind::Since;
}

} // namespace

Formula Formula::top() {
  static const Formula f(std::make_shared<Node>(Node{Kind::True, {}, {}, {}}));
  return f;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<Node>(Node{Kind::False, {}, {}, {}}));
  return f;
}

Formula Formula::atom(const BoolExpr &expr) {
  switch (expr.kind()) {
  case BoolExpr::Kind::Variable:
  case BoolExpr::Kind::Compare: {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = expr;
    return Formula(std::move(n));
  }
  default:
    return lift(expr);
  }
}

Formula Formula::make(Kind kind, Interval interval, std::vector<Formula> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->interval = interval;
  n->children = std::move(children);
  for (const auto &c : n->children) {
    n->size += c.node_->size;
    n->temporal_free = n->temporal_free && c.node_->temporal_free;
  }
  n->temporal_free = n->temporal_free && !is_temporal(kind);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula a) { return make(Kind::Not, {}, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, {}, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Kind::Implies, {}, {std::move(a), std::move(b)});
}
Formula Formula::prev(Formula a) { return make(Kind::Prev, {}, {std::move(a)}); }
Formula Formula::once(Interval i, Formula a) { return make(Kind::Once, i, {std::move(a)}); }
Formula Formula::historically(Interval i, Formula a) {
  return make(Kind::Historically, i, {std::move(a)});
}
Formula Formula::since(Interval i, Formula a, Formula b) {
  return make(Kind::Since, i, {std::move(a), std::move(b)});
}

Formula::Kind Formula::kind() const { return node_->kind; }
const BoolExpr &Formula::atom_expr() const { return *node_->atom; }
const Interval &Formula::interval() const { return node_->interval; }
const Formula &Formula::lhs() const { return node_->children.at(0); }
const Formula &Formula::rhs() const { return node_->children.at(1); }
bool Formula::is_temporal_free() const { return node_->temporal_free; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula &a, const Formula &b) {
  if (a.node_ == b.node_)
    return true;
  const auto &x = *a.node_;
  const auto &y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || !(x.interval == y.interval))
    return false;
  if (x.kind == Formula::Kind::Atom)
    return *x.atom == *y.atom;
  return x.children == y.children;
}

Formula lift(const BoolExpr &e) {
  switch (e.kind()) {
  case BoolExpr::Kind::Constant:
    return e.constant_value() ? Formula::top() : Formula::bottom();
  case BoolExpr::Kind::Variable:
  case BoolExpr::Kind::Compare:
    return Formula::atom(e);
  case BoolExpr::Kind::Not:
    return Formula::negate(lift(e.lhs()));
  case BoolExpr::Kind::And:
    return Formula::conj(lift(e.lhs()), lift(e.rhs()));
  case BoolExpr::Kind::Or:
    return Formula::disj(lift(e.lhs()), lift(e.rhs()));
  case BoolExpr::Kind::Implies:
    return Formula::implies(lift(e.lhs()), lift(e.rhs()));
  }
  return Formula::bottom();
}

Formula since_incl_required(const Formula &a, const Formula &b) {
  return Formula::since(a, Formula::conj(a, b));
}

Formula since_incl_optional(const Formula &a, const Formula &b) {
  return Formula::implies(Formula::once(b), since_incl_required(a, b));
}

Formula prev_pow(std::size_t m, const Formula &a) {
  if (m == 0)
    throw ArgumentError("Y^m requires m >= 1");
  return Formula::once(Interval::closed(m, m), a);
}

Formula expand_sugar(Sugar kind, const Formula &a, const Formula &b, std::size_t m) {
  switch (kind) {
  case Sugar::SinceInclRequired: return since_incl_required(a, b);
  case Sugar::SinceInclOptional: return since_incl_optional(a, b);
  case Sugar::PrevPow: return prev_pow(m, a);
  }
  throw ArgumentError("unknown sugar kind");
}

namespace {

using Bits = std::vector<char>;

class Evaluator {
public:
  explicit Evaluator(const Trace &trace) : trace_(trace), len_(trace.size()) {}

  const Bits &run(const Formula &f) {
    if (auto it = cache_.find(f.id()); it != cache_.end())
      return it->second;
    Bits out = compute(f);
    return cache_.emplace(f.id(), std::move(out)).first->second;
  }

private:
  Bits compute(const Formula &f) {
    Bits out(len_, 0);
    switch (f.kind()) {
    case Formula::Kind::True:
      std::fill(out.begin(), out.end(), 1);
      break;
    case Formula::Kind::False:
      break;
    case Formula::Kind::Atom:
      for (std::size_t t = 0; t < len_; ++t)
        out[t] = f.atom_expr().evaluate(trace_[t], t);
      break;
    case Formula::Kind::Not: {
      const Bits &a = run(f.lhs());
      for (std::size_t t = 0; t < len_; ++t)
        out[t] = !a[t];
      break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      const Bits &a = run(f.lhs());
      const Bits &b = run(f.rhs());
      for (std::size_t t = 0; t < len_; ++t) {
        if (f.kind() == Formula::Kind::And)
          out[t] = a[t] && b[t];
        else if (f.kind() == Formula::Kind::Or)
          out[t] = a[t] || b[t];
        else
          out[t] = !a[t] || b[t];
      }
      break;
    }
    case Formula::Kind::Prev: {
      const Bits &a = run(f.lhs());
      for (std::size_t t = 1; t < len_; ++t)
        out[t] = a[t - 1];
      break;
    }
    case Formula::Kind::Once:
      once(f.interval(), run(f.lhs()), out);
      break;
    case Formula::Kind::Historically: {
      // H_I a == !O_I !a
      Bits neg = run(f.lhs());
      for (auto &bit : neg)
        bit = !bit;
      once(f.interval(), neg, out);
      for (auto &bit : out)
        bit = !bit;
      break;
    }
    case Formula::Kind::Since: {
      const Bits &a = run(f.lhs());
      const Bits &b = run(f.rhs());
      since(f.interval(), a, b, out);
      break;
    }
    }
    return out;
  }

  void once(const Interval &iv, const Bits &a, Bits &out) const {
    if (iv.is_default()) {
      bool seen = false;
      for (std::size_t t = 0; t < len_; ++t)
        out[t] = seen = seen || a[t];
      return;
    }
    for (std::size_t t = 0; t < len_; ++t) {
      if (t < iv.lo())
        continue;
      std::size_t first = iv.hi() && t > *iv.hi() ? t - *iv.hi() : 0;
      for (std::size_t t0 = first; t0 <= t - iv.lo(); ++t0) {
        if (a[t0]) {
          out[t] = 1;
          break;
        }
      }
    }
  }

  void since(const Interval &iv, const Bits &a, const Bits &b, Bits &out) const {
    if (iv.is_default()) {
      bool held = false;
      for (std::size_t t = 0; t < len_; ++t)
        out[t] = held = b[t] || (held && a[t]);
      return;
    }
    for (std::size_t t = 0; t < len_; ++t) {
      // Walk t0 backwards; a must hold on (t0, t] to keep going.
      for (std::size_t d = 0; d <= t; ++d) {
        if (iv.hi() && d > *iv.hi())
          break;
        std::size_t t0 = t - d;
        if (d >= iv.lo() && b[t0]) {
          out[t] = 1;
          break;
        }
        if (!a[t0])
          break;
      }
    }
  }

  const Trace &trace_;
  std::size_t len_;
  std::unordered_map<const void *, Bits> cache_;
};

} // namespace

std::vector<bool> evaluate_all(const Formula &f, const Trace &trace) {
  Evaluator ev(trace);
  const Bits &bits = ev.run(f);
  return std::vector<bool>(bits.begin(), bits.end());
}

bool eval_at(const Formula &f, const Trace &trace, std::size_t t) {
  if (t >= trace.size())
    throw RangeError("time index " + std::to_string(t) + " is outside the trace [0," +
                     std::to_string(trace.last()) + "]");
  Evaluator ev(trace);
  return ev.run(f)[t] != 0;
}

bool eval(const Formula &f, const Trace &trace) { return eval_at(f, trace, trace.last()); }

} // namespace fretish
