// Canonical formula text: printer (with optional macro recognition) and parser.

#include <functional>

#include "fretish/error.hpp"
#include "fretish/mtl.hpp"
#include "lexer.hpp"

namespace fretish {

namespace {

using K = Formula::Kind;

enum Prec { kImplies = 1, kOr = 2, kAnd = 3, kCompare = 4, kUnary = 5, kPrimary = 6 };

std::string interval_text(const Interval &iv) {
  if (iv.is_default())
    return "";
  std::string hi = iv.hi() ? std::to_string(*iv.hi()) + "]" : "inf)";
  return "[" + std::to_string(iv.lo()) + "," + hi;
}

// Macro shapes. Each matcher returns the macro argument(s) on success.

bool is_ftp(const Formula &f) {
  return f.kind() == K::Not && f.lhs().kind() == K::Prev && f.lhs().lhs().kind() == K::True;
}

bool is_not_of(const Formula &f, const Formula &operand) {
  return f.kind() == K::Not && f.lhs() == operand;
}

const Formula *match_sr(const Formula &f) {
  // (a S (a & b)) -> returns b; a is f.lhs()
  if (f.kind() != K::Since || !f.interval().is_default())
    return nullptr;
  const Formula &inner = f.rhs();
  if (inner.kind() != K::And || !(inner.lhs() == f.lhs()))
    return nullptr;
  return &inner.rhs();
}

bool match_si(const Formula &f) {
  if (f.kind() != K::Implies)
    return false;
  const Formula &guard = f.lhs();
  if (guard.kind() != K::Once || !guard.interval().is_default())
    return false;
  const Formula *b = match_sr(f.rhs());
  return b != nullptr && *b == guard.lhs();
}

// fim(m) = m & (ftp | Y !m)
const Formula *match_fim(const Formula &f) {
  if (f.kind() != K::And)
    return nullptr;
  const Formula &m = f.lhs();
  const Formula &r = f.rhs();
  if (r.kind() != K::Or || !is_ftp(r.lhs()) || r.rhs().kind() != K::Prev ||
      !is_not_of(r.rhs().lhs(), m))
    return nullptr;
  return &m;
}

// lim(m) = !m & Y m
const Formula *match_lim(const Formula &f) {
  if (f.kind() != K::And || f.lhs().kind() != K::Not)
    return nullptr;
  const Formula &m = f.lhs().lhs();
  if (f.rhs().kind() != K::Prev || !(f.rhs().lhs() == m))
    return nullptr;
  return &m;
}

// fnim(m) = !m & (ftp | Y m)
const Formula *match_fnim(const Formula &f) {
  if (f.kind() != K::And || f.lhs().kind() != K::Not)
    return nullptr;
  const Formula &m = f.lhs().lhs();
  const Formula &r = f.rhs();
  if (r.kind() != K::Or || !is_ftp(r.lhs()) || r.rhs().kind() != K::Prev ||
      !(r.rhs().lhs() == m))
    return nullptr;
  return &m;
}

// lnim(m) = m & Y !m
const Formula *match_lnim(const Formula &f) {
  if (f.kind() != K::And || f.rhs().kind() != K::Prev || !is_not_of(f.rhs().lhs(), f.lhs()))
    return nullptr;
  return &f.lhs();
}

// ffim(m) = fim(m) & (ftp | Y H !m)
const Formula *match_ffim(const Formula &f) {
  if (f.kind() != K::And)
    return nullptr;
  const Formula *m = match_fim(f.lhs());
  if (m == nullptr)
    return nullptr;
  const Formula &r = f.rhs();
  if (r.kind() != K::Or || !is_ftp(r.lhs()) || r.rhs().kind() != K::Prev)
    return nullptr;
  const Formula &h = r.rhs().lhs();
  if (h.kind() != K::Historically || !h.interval().is_default() || !is_not_of(h.lhs(), *m))
    return nullptr;
  return m;
}

// flim(m) = lim(m) & Y H !lim(m)
const Formula *match_flim(const Formula &f) {
  if (f.kind() != K::And)
    return nullptr;
  const Formula *m = match_lim(f.lhs());
  if (m == nullptr || f.rhs().kind() != K::Prev)
    return nullptr;
  const Formula &h = f.rhs().lhs();
  if (h.kind() != K::Historically || !h.interval().is_default() || !is_not_of(h.lhs(), f.lhs()))
    return nullptr;
  return m;
}

class Printer {
public:
  explicit Printer(FormatOptions options) : options_(options) {}

  std::string print(const Formula &f, int min_prec) const {
    int prec = 0;
    std::string text = render(f, prec);
    return prec < min_prec ? "(" + text + ")" : text;
  }

private:
  std::string render(const Formula &f, int &prec) const {
    if (options_.macros) {
      if (std::string text; render_macro(f, text, prec))
        return text;
    }
    switch (f.kind()) {
    case K::True:
      prec = kPrimary;
      return "TRUE";
    case K::False:
      prec = kPrimary;
      return "FALSE";
    case K::Atom:
      prec = f.atom_expr().kind() == BoolExpr::Kind::Compare ? kCompare : kPrimary;
      return to_string(f.atom_expr());
    case K::Not:
      prec = kUnary;
      return "!" + print(f.lhs(), kUnary);
    case K::Prev:
      prec = kUnary;
      return "Y " + print(f.lhs(), kUnary);
    case K::Once:
      prec = kUnary;
      return "O" + interval_text(f.interval()) + " " + print(f.lhs(), kUnary);
    case K::Historically:
      prec = kUnary;
      return "H" + interval_text(f.interval()) + " " + print(f.lhs(), kUnary);
    case K::And:
      prec = kAnd;
      return print(f.lhs(), kAnd) + " & " + print(f.rhs(), kAnd + 1);
    case K::Or:
      prec = kOr;
      if (options_.macros && is_trigger(f))
        return print_plain_conj(f.lhs()) + " | " + print(f.rhs(), kOr + 1);
      return print(f.lhs(), kOr) + " | " + print(f.rhs(), kOr + 1);
    case K::Implies:
      prec = kImplies;
      return print(f.lhs(), kImplies + 1) + " -> " + print(f.rhs(), kImplies);
    case K::Since:
      prec = kPrimary;
      return "(" + print(f.lhs(), 0) + " S" + interval_text(f.interval()) + " " +
             print(f.rhs(), 0) + ")";
    }
    return "?";
  }

  // (c & Y !c) | (c & left): the rising edge reads better spelled out than
  // as lnim(c), which has the same shape.
  static bool is_trigger(const Formula &f) {
    const Formula &edge = f.lhs();
    const Formula &start = f.rhs();
    return edge.kind() == K::And && start.kind() == K::And && match_lnim(edge) != nullptr &&
           edge.lhs() == start.lhs();
  }

  std::string print_plain_conj(const Formula &f) const {
    return print(f.lhs(), kAnd) + " & " + print(f.rhs(), kAnd + 1);
  }

  bool render_macro(const Formula &f, std::string &out, int &prec) const {
    prec = kPrimary;
    if (is_ftp(f)) {
      out = "ftp";
      return true;
    }
    using Matcher = const Formula *(*)(const Formula &);
    static const std::pair<const char *, Matcher> kPoints[] = {
        {"ffim", match_ffim}, {"flim", match_flim}, {"fim", match_fim},  {"lim", match_lim},
        {"fnim", match_fnim}, {"lnim", match_lnim},
    };
    for (auto &[name, matcher] : kPoints) {
      if (const Formula *m = matcher(f)) {
        out = std::string(name) + "(" + print(*m, 0) + ")";
        return true;
      }
    }
    if (match_si(f)) {
      const Formula &since = f.rhs();
      out = "SI(" + print(since.lhs(), 0) + ", " + print(since.rhs().rhs(), 0) + ")";
      return true;
    }
    if (const Formula *b = match_sr(f)) {
      out = "SR(" + print(f.lhs(), 0) + ", " + print(*b, 0) + ")";
      return true;
    }
    if (f.kind() == K::Once && f.interval().hi() && *f.interval().hi() == f.interval().lo() &&
        f.interval().lo() >= 1) {
      prec = kUnary;
      out = "Y^" + std::to_string(f.interval().lo()) + " " + print(f.lhs(), kUnary);
      return true;
    }
    return false;
  }

  FormatOptions options_;
};

// Builders mirroring the matchers above.
Formula ftp() { return Formula::negate(Formula::prev(Formula::top())); }
Formula fim(const Formula &m) {
  return Formula::conj(m, Formula::disj(ftp(), Formula::prev(Formula::negate(m))));
}
Formula lim(const Formula &m) { return Formula::conj(Formula::negate(m), Formula::prev(m)); }
Formula fnim(const Formula &m) {
  return Formula::conj(Formula::negate(m), Formula::disj(ftp(), Formula::prev(m)));
}
Formula lnim(const Formula &m) { return Formula::conj(m, Formula::prev(Formula::negate(m))); }
Formula ffim(const Formula &m) {
  return Formula::conj(
      fim(m), Formula::disj(ftp(), Formula::prev(Formula::historically(Formula::negate(m)))));
}
Formula flim(const Formula &m) {
  Formula l = lim(m);
  return Formula::conj(l, Formula::prev(Formula::historically(Formula::negate(l))));
}

class Parser {
public:
  explicit Parser(detail::TokenStream &ts) : ts_(ts) {}

  Formula implies() {
    Formula lhs = disj();
    if (ts_.accept_symbol("->"))
      return Formula::implies(lhs, implies());
    return lhs;
  }

private:
  Formula disj() {
    Formula lhs = conj();
    while (ts_.accept_symbol("|"))
      lhs = Formula::disj(lhs, conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (ts_.accept_symbol("&"))
      lhs = Formula::conj(lhs, unary());
    return lhs;
  }

  Interval interval() {
    if (!ts_.accept_symbol("["))
      return Interval{};
    std::size_t lo = detail::parse_natural(ts_);
    ts_.expect_symbol(",");
    if (ts_.accept_keyword("inf")) {
      if (!ts_.accept_symbol(")") && !ts_.accept_symbol("]"))
        ts_.fail({"')'", "']'"});
      return Interval::unbounded(lo);
    }
    std::size_t hi = detail::parse_natural(ts_);
    ts_.expect_symbol("]");
    if (hi < lo)
      throw ValidationError("interval [" + std::to_string(lo) + "," + std::to_string(hi) +
                            "] is empty");
    return Interval::closed(lo, hi);
  }

  Formula unary() {
    if (ts_.accept_symbol("!"))
      return Formula::negate(unary());
    if (ts_.accept_word("Y")) {
      if (ts_.accept_symbol("^")) {
        std::size_t m = detail::parse_natural(ts_);
        if (m == 0)
          throw ValidationError("Y^m requires m >= 1");
        return prev_pow(m, unary());
      }
      return Formula::prev(unary());
    }
    if (ts_.accept_word("O")) {
      Interval iv = interval();
      return Formula::once(iv, unary());
    }
    if (ts_.accept_word("H")) {
      Interval iv = interval();
      return Formula::historically(iv, unary());
    }
    return primary();
  }

  Formula call1(const std::function<Formula(const Formula &)> &build) {
    ts_.expect_symbol("(");
    Formula arg = implies();
    ts_.expect_symbol(")");
    return build(arg);
  }

  Formula primary() {
    if (ts_.accept_symbol("(")) {
      Formula inner = implies();
      if (ts_.accept_word("S")) {
        Interval iv = interval();
        Formula rhs = implies();
        ts_.expect_symbol(")");
        return Formula::since(iv, inner, rhs);
      }
      if (!ts_.accept_symbol(")"))
        ts_.fail({"')'", "'S'"});
      return inner;
    }
    if (ts_.accept_keyword("TRUE"))
      return Formula::top();
    if (ts_.accept_keyword("FALSE"))
      return Formula::bottom();
    if (ts_.accept_word("ftp"))
      return ftp();
    for (auto [name, sugar] : {std::pair{"SI", Sugar::SinceInclOptional},
                               std::pair{"SR", Sugar::SinceInclRequired}}) {
      if (ts_.accept_word(name)) {
        ts_.expect_symbol("(");
        Formula a = implies();
        ts_.expect_symbol(",");
        Formula b = implies();
        ts_.expect_symbol(")");
        return expand_sugar(sugar, a, b);
      }
    }
    static const std::pair<const char *, Formula (*)(const Formula &)> kPoints[] = {
        {"fim", fim}, {"lim", lim}, {"fnim", fnim}, {"lnim", lnim}, {"ffim", ffim}, {"flim", flim},
    };
    for (auto &[name, build] : kPoints)
      if (ts_.accept_word(name))
        return call1(build);
    const auto &tok = ts_.peek();
    if (tok.kind == detail::TokenKind::Identifier && detail::is_reserved_word(tok.text))
      ts_.fail({"formula"});
    if (tok.kind == detail::TokenKind::End || tok.kind == detail::TokenKind::Symbol) {
      if (!ts_.is_symbol("-"))
        ts_.fail({"'('", "'!'", "'Y'", "'O'", "'H'", "TRUE", "FALSE", "identifier", "number"});
    }
    return Formula::atom(detail::parse_atom(ts_));
  }

  detail::TokenStream &ts_;
};

} // namespace

std::string format_formula(const Formula &f, FormatOptions options) {
  return Printer(options).print(f, 0);
}

Formula parse_formula(const std::string &text) {
  detail::TokenStream ts(detail::tokenize(text));
  Formula f = Parser(ts).implies();
  if (!ts.at_end())
    ts.fail({"'&'", "'|'", "'->'", "end of input"});
  return f;
}

} // namespace fretish
