#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pitchgraph::query {

enum class TokenKind : std::uint8_t {
  // keywords
  Match, Where, Return, Distinct, Order, By, Asc, Desc, Limit, And, Or, Not, Contains, Is,
  Null, True, False, As,
  // atoms
  Ident, String, Integer, Float,
  // punctuation
  LParen, RParen, LBracket, RBracket, LBrace, RBrace, Colon, Comma, Dot, Dash, Lt, Gt, Le, Ge,
  Eq, Neq, Star, Semicolon,
};

struct Token {
  TokenKind kind;
  // Identifier name, decoded string body, numeric spelling, or the
  // upper-cased keyword.
  std::string text;
  std::size_t offset = 0;

  bool operator==(const Token&) const = default;
};

std::string_view to_string(TokenKind kind);

// Throws LexError on an unterminated string, a bad escape, an unknown
// character or an integer literal out of range.
std::vector<Token> tokenize(std::string_view source);

}  // namespace pitchgraph::query
