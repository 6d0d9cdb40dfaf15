#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mvs/diagnostics.hpp"

namespace mvs {

enum class TokenKind {
  Keyword,
  Identifier,
  IntLiteral,
  FloatLiteral,
  Punctuation,
  Operator,
  Arrow,
  Ampersand,
  Underscore,
  End,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string lexeme;
  Span span;

  bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }
  bool is_keyword(std::string_view text) const {
    return is(TokenKind::Keyword, text);
  }
  bool is_punct(std::string_view text) const {
    return is(TokenKind::Punctuation, text);
  }
  bool is_operator(std::string_view text) const {
    return is(TokenKind::Operator, text);
  }
};

bool is_keyword(std::string_view word);

/// Splits `source` into tokens, skipping whitespace and `//` comments. The
/// returned stream always ends with a single End token whose span is empty.
/// Throws SyntaxError at the first character outside the lexical grammar.
std::vector<Token> tokenize(std::string_view source);

}  // namespace mvs
