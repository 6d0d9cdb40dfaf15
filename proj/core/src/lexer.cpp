#include "mvs/lexer.hpp"

#include <array>
#include <cctype>

namespace mvs {

namespace {

constexpr std::array<std::string_view, 8> kKeywords = {
    "let", "var", "in", "struct", "if", "then", "else", "inout"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "integer-literal";
    case TokenKind::FloatLiteral: return "float-literal";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Operator: return "operator";
    case TokenKind::Arrow: return "arrow";
    case TokenKind::Ampersand: return "ampersand";
    case TokenKind::Underscore: return "underscore";
    case TokenKind::End: return "end-of-input";
  }
  return "unknown";
}

bool is_keyword(std::string_view word) {
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();

  auto push = [&](TokenKind kind, std::size_t start, std::size_t end) {
    tokens.push_back(Token{kind, std::string(source.substr(start, end - start)),
                           Span{start, end}});
  };

  while (i < n) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') ++i;
      continue;
    }

    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(source[i])) ++i;
      auto word = source.substr(start, i - start);
      if (word == "_") {
        push(TokenKind::Underscore, start, i);
      } else if (is_keyword(word)) {
        push(TokenKind::Keyword, start, i);
      } else {
        push(TokenKind::Identifier, start, i);
      }
      continue;
    }

    if (is_digit(c)) {
      while (i < n && is_digit(source[i])) ++i;
      if (i + 1 < n && source[i] == '.' && is_digit(source[i + 1])) {
        ++i;
        while (i < n && is_digit(source[i])) ++i;
        push(TokenKind::FloatLiteral, start, i);
      } else {
        push(TokenKind::IntLiteral, start, i);
      }
      continue;
    }

    auto next = i + 1 < n ? source[i + 1] : '\0';
    switch (c) {
      case '(': case ')': case '{': case '}': case '[': case ']':
      case ',': case ':': case ';': case '.':
        push(TokenKind::Punctuation, start, ++i);
        continue;
      case '&':
        push(TokenKind::Ampersand, start, ++i);
        continue;
      case '-':
        if (next == '>') {
          i += 2;
          push(TokenKind::Arrow, start, i);
        } else {
          push(TokenKind::Operator, start, ++i);
        }
        continue;
      case '+': case '*': case '/': case '%':
        push(TokenKind::Operator, start, ++i);
        continue;
      case '=': case '<': case '>':
        i += next == '=' ? 2 : 1;
        push(TokenKind::Operator, start, i);
        continue;
      case '!':
        if (next == '=') {
          i += 2;
          push(TokenKind::Operator, start, i);
          continue;
        }
        break;
      default:
        break;
    }
    throw SyntaxError(Span{start, start + 1},
                      "unexpected character '" + std::string(1, c) + "'");
  }
  tokens.push_back(Token{TokenKind::End, "", Span{n, n}});
  return tokens;
}

}  // namespace mvs
