#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fretish/error.hpp"
#include "fretish/expr.hpp"

namespace fretish::detail {

enum class TokenKind { Identifier, Number, Symbol, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits text into identifiers, unsigned numbers (digits with an optional
/// fractional part) and operator symbols. `#` starts a comment that runs to
/// the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with helpers shared by the three parsers.
class TokenStream {
public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token &peek(std::size_t ahead = 0) const;
  const Token &next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_symbol(std::string_view sym, std::size_t ahead = 0) const;
  /// Case-insensitive identifier match.
  bool is_keyword(std::string_view word, std::size_t ahead = 0) const;
  /// Case-sensitive identifier match.
  bool is_word(std::string_view word, std::size_t ahead = 0) const;
  bool accept_word(std::string_view word);

  bool accept_symbol(std::string_view sym);
  bool accept_keyword(std::string_view word);
  void expect_symbol(std::string_view sym);
  void expect_keyword(std::string_view word);

  [[noreturn]] void fail(std::vector<std::string> expected) const;

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool iequals(std::string_view a, std::string_view b);

/// Words that cannot name a variable.
bool is_reserved_word(std::string_view word);

/// Parses an unsigned decimal or a `a/b` fraction at the cursor, with an
/// optional leading minus sign.
bool parse_number(TokenStream &ts, Rational &out);

/// Boolean expression grammar shared by requirements and MTL atoms.
BoolExpr parse_bool(TokenStream &ts);

/// A variable or a single comparison; nothing else.
BoolExpr parse_atom(TokenStream &ts);

std::size_t parse_natural(TokenStream &ts);

} // namespace fretish::detail
