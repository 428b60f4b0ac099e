#include "fretish/requirement.hpp"

#include <sstream>

#include "fretish/error.hpp"
#include "lexer.hpp"

namespace fretish {

bool is_only(const Scope &scope) {
  return scope.kind == Scope::Kind::OnlyAfter || scope.kind == Scope::Kind::OnlyBefore ||
         scope.kind == Scope::Kind::OnlyIn;
}

const char *to_string(Scope::Kind kind) {
  switch (kind) {
  case Scope::Kind::Null: return "null";
  case Scope::Kind::In: return "in";
  case Scope::Kind::NotIn: return "notin";
  case Scope::Kind::Before: return "before";
  case Scope::Kind::After: return "after";
  case Scope::Kind::OnlyAfter: return "onlyAfter";
  case Scope::Kind::OnlyBefore: return "onlyBefore";
  case Scope::Kind::OnlyIn: return "onlyIn";
  }
  return "?";
}

const char *to_string(Timing::Kind kind) {
  switch (kind) {
  case Timing::Kind::Immediately: return "immediately";
  case Timing::Kind::Next: return "next";
  case Timing::Kind::Never: return "never";
  case Timing::Kind::Eventually: return "eventually";
  case Timing::Kind::Always: return "always";
  case Timing::Kind::Within: return "within";
  case Timing::Kind::For: return "for";
  case Timing::Kind::After: return "after";
  case Timing::Kind::Until: return "until";
  case Timing::Kind::Before: return "before";
  }
  return "?";
}

namespace {

using detail::TokenKind;
using detail::TokenStream;

BoolExpr parse_mode(TokenStream &ts) {
  if (ts.accept_symbol("(")) {
    BoolExpr mode = detail::parse_bool(ts);
    ts.expect_symbol(")");
    ts.expect_keyword("mode");
    return mode;
  }
  const auto &tok = ts.peek();
  if (tok.kind != TokenKind::Identifier || detail::is_reserved_word(tok.text))
    ts.fail({"mode name"});
  BoolExpr mode = BoolExpr::variable(ts.next().text);
  ts.expect_keyword("mode");
  return mode;
}

std::optional<Scope> parse_scope(TokenStream &ts) {
  using K = Scope::Kind;
  if (ts.accept_keyword("only")) {
    K kind;
    if (ts.accept_keyword("in"))
      kind = K::OnlyIn;
    else if (ts.accept_keyword("before"))
      kind = K::OnlyBefore;
    else if (ts.accept_keyword("after"))
      kind = K::OnlyAfter;
    else
      ts.fail({"'in'", "'before'", "'after'"});
    return Scope::make(kind, parse_mode(ts));
  }
  if (ts.accept_keyword("notin"))
    return Scope::make(K::NotIn, parse_mode(ts));
  if (ts.is_keyword("not") && ts.is_keyword("in", 1)) {
    ts.next();
    ts.next();
    return Scope::make(K::NotIn, parse_mode(ts));
  }
  if (ts.accept_keyword("in"))
    return Scope::make(K::In, parse_mode(ts));
  if (ts.accept_keyword("before"))
    return Scope::make(K::Before, parse_mode(ts));
  if (ts.accept_keyword("after"))
    return Scope::make(K::After, parse_mode(ts));
  return std::nullopt;
}

std::size_t parse_duration(TokenStream &ts) {
  const auto &tok = ts.peek();
  std::size_t line = tok.line, column = tok.column;
  std::size_t d = detail::parse_natural(ts);
  if (d == 0)
    throw ValidationError("duration must be at least 1 at " + std::to_string(line) + ":" +
                          std::to_string(column));
  // optional unit word, discarded
  if (ts.peek().kind == TokenKind::Identifier && !ts.is_keyword("satisfy"))
    ts.next();
  return d;
}

Timing parse_timing(TokenStream &ts) {
  using K = Timing::Kind;
  if (ts.accept_keyword("immediately"))
    return Timing::simple(K::Immediately);
  if (ts.accept_keyword("at")) {
    ts.accept_keyword("the");
    ts.expect_keyword("next");
    ts.expect_keyword("timepoint");
    return Timing::simple(K::Next);
  }
  if (ts.accept_keyword("next"))
    return Timing::simple(K::Next);
  if (ts.accept_keyword("always"))
    return Timing::simple(K::Always);
  if (ts.accept_keyword("never"))
    return Timing::simple(K::Never);
  if (ts.accept_keyword("eventually"))
    return Timing::simple(K::Eventually);
  for (auto [word, kind] : {std::pair{"within", K::Within}, std::pair{"for", K::For},
                            std::pair{"after", K::After}}) {
    if (ts.accept_keyword(word))
      return Timing::bounded(kind, parse_duration(ts));
  }
  if (ts.accept_keyword("until"))
    return Timing::stopped(K::Until, detail::parse_bool(ts));
  if (ts.accept_keyword("before"))
    return Timing::stopped(K::Before, detail::parse_bool(ts));
  return Timing::simple(K::Eventually);
}

Requirement parse_tokens(TokenStream &ts) {
  Requirement r;
  if (auto scope = parse_scope(ts)) {
    r.scope = *scope;
    ts.accept_symbol(",");
  }
  if (ts.accept_keyword("when")) {
    r.condition = detail::parse_bool(ts);
    ts.accept_symbol(",");
  }
  if (!ts.accept_keyword("the")) {
    if (r.condition || r.scope.kind != Scope::Kind::Null)
      ts.fail({"'the'"});
    ts.fail({"scope", "'when'", "'the'"});
  }
  const auto &component = ts.peek();
  if (component.kind != TokenKind::Identifier || detail::is_reserved_word(component.text))
    ts.fail({"component name"});
  ts.next();
  ts.expect_keyword("shall");
  r.timing = parse_timing(ts);
  ts.expect_keyword("satisfy");
  r.response = detail::parse_bool(ts);
  if (!ts.at_end())
    ts.fail({"'&'", "'|'", "'->'", "end of input"});
  return r;
}

std::string mode_text(const BoolExpr &mode) {
  if (mode.kind() == BoolExpr::Kind::Variable)
    return mode.name();
  return "(" + to_string(mode) + ")";
}

std::string scope_text(const Scope &s) {
  using K = Scope::Kind;
  const std::string mode = s.mode ? mode_text(*s.mode) + " mode" : "";
  switch (s.kind) {
  case K::Null: return "";
  case K::In: return "in " + mode;
  case K::NotIn: return "notin " + mode;
  case K::Before: return "before " + mode;
  case K::After: return "after " + mode;
  case K::OnlyAfter: return "only after " + mode;
  case K::OnlyBefore: return "only before " + mode;
  case K::OnlyIn: return "only in " + mode;
  }
  return "";
}

std::string timing_text(const Timing &t) {
  using K = Timing::Kind;
  switch (t.kind) {
  case K::Immediately: return "immediately";
  case K::Next: return "at the next timepoint";
  case K::Never: return "never";
  case K::Eventually: return "eventually";
  case K::Always: return "always";
  case K::Within:
  case K::For:
  case K::After: return std::string(to_string(t.kind)) + " " + std::to_string(t.duration) + " ticks";
  case K::Until:
  case K::Before: return std::string(to_string(t.kind)) + " " + to_string(*t.stop);
  }
  return "";
}

} // namespace

Requirement parse_requirement(const std::string &text) {
  TokenStream ts(detail::tokenize(text));
  return parse_tokens(ts);
}

std::vector<Requirement> parse_requirements(const std::string &text) {
  std::vector<Requirement> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      TokenStream ts(detail::tokenize(line));
      if (ts.at_end())
        continue;
      out.push_back(parse_tokens(ts));
    } catch (const SyntaxError &e) {
      throw SyntaxError(line_no, e.column(), e.found(), e.expected());
    }
  }
  return out;
}

std::string unparse_requirement(const Requirement &r) {
  std::string out;
  if (r.scope.kind != Scope::Kind::Null)
    out += scope_text(r.scope) + ", ";
  if (r.condition)
    out += "when " + to_string(*r.condition) + ", ";
  out += "the component shall " + timing_text(r.timing) + " satisfy " + to_string(r.response);
  return out;
}

} // namespace fretish
