#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

namespace fretish {

namespace {

std::string join_expected(const std::vector<std::string> &expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0)
      out += ", ";
    out += expected[i];
  }
  return out;
}

} // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string found,
                         std::vector<std::string> expected)
    : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
            ": unexpected " + found + "; expected one of: " + join_expected(expected)),
      line_(line), column_(column), found_(std::move(found)), expected_(std::move(expected)) {}

UnboundVariableError::UnboundVariableError(std::string variable, std::size_t index)
    : Error("variable '" + variable + "' is not bound at index " + std::to_string(index)),
      variable_(std::move(variable)), index_(index) {}

namespace detail {

namespace {

constexpr std::array<std::string_view, 19> kSymbols = {
    "->", "<=", ">=", "!=", "==", "<", ">", "=", "!", "&", "|",
    "(",  ")",  "[",  "]",  ",",  "^", "/", "-"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    std::size_t start = i, tl = line, tc = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      out.push_back({TokenKind::Identifier, std::string(text.substr(start, j - start)), tl, tc});
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < text.size() && digit(text[j]))
        ++j;
      if (j + 1 < text.size() && text[j] == '.' && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j]))
          ++j;
      }
      out.push_back({TokenKind::Number, std::string(text.substr(start, j - start)), tl, tc});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({TokenKind::Symbol, std::string(sym), tl, tc});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched)
      throw SyntaxError(tl, tc, "character '" + std::string(1, c) + "'",
                        {"identifier", "number", "operator"});
  }
  out.push_back({TokenKind::End, "", line, col});
  return out;
}

const Token &TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token &TokenStream::next() {
  const Token &tok = peek();
  if (pos_ < tokens_.size() - 1)
    ++pos_;
  return tok;
}

bool TokenStream::is_symbol(std::string_view sym, std::size_t ahead) const {
  const Token &tok = peek(ahead);
  return tok.kind == TokenKind::Symbol && tok.text == sym;
}

bool TokenStream::is_keyword(std::string_view word, std::size_t ahead) const {
  const Token &tok = peek(ahead);
  return tok.kind == TokenKind::Identifier && iequals(tok.text, word);
}

bool TokenStream::is_word(std::string_view word, std::size_t ahead) const {
  const Token &tok = peek(ahead);
  return tok.kind == TokenKind::Identifier && tok.text == word;
}

bool TokenStream::accept_word(std::string_view word) {
  if (!is_word(word))
    return false;
  next();
  return true;
}

bool TokenStream::accept_symbol(std::string_view sym) {
  if (!is_symbol(sym))
    return false;
  next();
  return true;
}

bool TokenStream::accept_keyword(std::string_view word) {
  if (!is_keyword(word))
    return false;
  next();
  return true;
}

void TokenStream::expect_symbol(std::string_view sym) {
  if (!accept_symbol(sym))
    fail({"'" + std::string(sym) + "'"});
}

void TokenStream::expect_keyword(std::string_view word) {
  if (!accept_keyword(word))
    fail({"'" + std::string(word) + "'"});
}

void TokenStream::fail(std::vector<std::string> expected) const {
  const Token &tok = peek();
  std::string found = tok.kind == TokenKind::End ? "end of input" : "'" + tok.text + "'";
  throw SyntaxError(tok.line, tok.column, std::move(found), std::move(expected));
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 6> kPhraseWords = {
      "the", "shall", "satisfy", "when", "true", "false"};
  static constexpr std::array<std::string_view, 13> kFormulaWords = {
      "Y", "O", "H", "S", "SI", "SR", "ftp", "fim", "lim", "fnim", "lnim", "ffim", "flim"};
  for (auto w : kPhraseWords)
    if (iequals(w, word))
      return true;
  return std::find(kFormulaWords.begin(), kFormulaWords.end(), word) != kFormulaWords.end();
}

namespace {

std::int64_t checked_digits(std::string_view digits, const Token &tok) {
  std::int64_t value = 0;
  for (char c : digits) {
    if (value > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10)
      throw ValidationError("numeric literal out of range at " + std::to_string(tok.line) +
                            ":" + std::to_string(tok.column));
    value = value * 10 + (c - '0');
  }
  return value;
}

Rational decimal_value(const Token &tok) {
  auto dot = tok.text.find('.');
  if (dot == std::string::npos)
    return Rational(checked_digits(tok.text, tok));
  std::string_view whole(tok.text.data(), dot);
  std::string_view frac(tok.text.data() + dot + 1, tok.text.size() - dot - 1);
  if (frac.size() > 18)
    throw ValidationError("numeric literal has too many fractional digits: " + tok.text);
  std::int64_t scale = 1;
  for (std::size_t k = 0; k < frac.size(); ++k)
    scale *= 10;
  std::string digits(whole);
  digits += frac;
  return Rational(checked_digits(digits, tok), scale);
}

} // namespace

bool parse_number(TokenStream &ts, Rational &out) {
  bool negative = false;
  if (ts.is_symbol("-") && ts.peek(1).kind == TokenKind::Number) {
    ts.next();
    negative = true;
  }
  if (ts.peek().kind != TokenKind::Number)
    return false;
  Rational value = decimal_value(ts.next());
  if (ts.is_symbol("/") && ts.peek(1).kind == TokenKind::Number) {
    ts.next();
    const Token &den_tok = ts.peek();
    Rational den = decimal_value(ts.next());
    if (den.numerator() == 0)
      throw ValidationError("zero denominator at " + std::to_string(den_tok.line) + ":" +
                            std::to_string(den_tok.column));
    value /= den;
  }
  out = negative ? -value : value;
  return true;
}

std::size_t parse_natural(TokenStream &ts) {
  const Token &tok = ts.peek();
  if (tok.kind != TokenKind::Number || tok.text.find('.') != std::string::npos)
    ts.fail({"natural number"});
  ts.next();
  return static_cast<std::size_t>(checked_digits(tok.text, tok));
}

namespace {

bool peek_compare(const TokenStream &ts, CompareOp &op) {
  static const std::array<std::pair<std::string_view, CompareOp>, 7> kOps = {{
      {"<=", CompareOp::LessEq},
      {">=", CompareOp::GreaterEq},
      {"!=", CompareOp::NotEqual},
      {"==", CompareOp::Equal},
      {"<", CompareOp::Less},
      {">", CompareOp::Greater},
      {"=", CompareOp::Equal},
  }};
  for (auto &[sym, value] : kOps) {
    if (ts.is_symbol(sym)) {
      op = value;
      return true;
    }
  }
  return false;
}

bool parse_operand(TokenStream &ts, Operand &out) {
  Rational number;
  if (parse_number(ts, number)) {
    out = number;
    return true;
  }
  const Token &tok = ts.peek();
  if (tok.kind == TokenKind::Identifier && !is_reserved_word(tok.text)) {
    out = ts.next().text;
    return true;
  }
  return false;
}

BoolExpr parse_implies(TokenStream &ts);

BoolExpr parse_comparison(TokenStream &ts) {
  const Token start = ts.peek();
  Operand lhs;
  if (!parse_operand(ts, lhs))
    ts.fail({"identifier", "number", "'('", "'!'", "true", "false"});
  CompareOp op;
  if (peek_compare(ts, op)) {
    ts.next();
    Operand rhs;
    if (!parse_operand(ts, rhs)) {
      const Token &bad = ts.peek();
      if (bad.kind == TokenKind::Identifier && (iequals(bad.text, "true") || iequals(bad.text, "false")))
        throw TypeError("non-numeric operand '" + bad.text + "' in comparison at " +
                        std::to_string(bad.line) + ":" + std::to_string(bad.column));
      ts.fail({"identifier", "number"});
    }
    return BoolExpr::compare(std::move(lhs), op, std::move(rhs));
  }
  if (std::holds_alternative<Rational>(lhs))
    throw TypeError("numeric literal '" + start.text + "' used as a Boolean at " +
                    std::to_string(start.line) + ":" + std::to_string(start.column));
  return BoolExpr::variable(std::get<std::string>(lhs));
}

BoolExpr parse_primary(TokenStream &ts) {
  if (ts.accept_symbol("(")) {
    BoolExpr inner = parse_implies(ts);
    ts.expect_symbol(")");
    return inner;
  }
  if (ts.accept_keyword("true"))
    return BoolExpr::constant(true);
  if (ts.accept_keyword("false"))
    return BoolExpr::constant(false);
  return parse_comparison(ts);
}

BoolExpr parse_unary(TokenStream &ts) {
  if (ts.accept_symbol("!"))
    return BoolExpr::negate(parse_unary(ts));
  return parse_primary(ts);
}

BoolExpr parse_and(TokenStream &ts) {
  BoolExpr lhs = parse_unary(ts);
  while (ts.accept_symbol("&"))
    lhs = BoolExpr::conj(lhs, parse_unary(ts));
  return lhs;
}

BoolExpr parse_or(TokenStream &ts) {
  BoolExpr lhs = parse_and(ts);
  while (ts.accept_symbol("|"))
    lhs = BoolExpr::disj(lhs, parse_and(ts));
  return lhs;
}

BoolExpr parse_implies(TokenStream &ts) {
  BoolExpr lhs = parse_or(ts);
  if (ts.accept_symbol("->"))
    return BoolExpr::implies(lhs, parse_implies(ts));
  return lhs;
}

} // namespace

BoolExpr parse_bool(TokenStream &ts) { return parse_implies(ts); }

BoolExpr parse_atom(TokenStream &ts) { return parse_comparison(ts); }

} // namespace detail
} // namespace fretish
