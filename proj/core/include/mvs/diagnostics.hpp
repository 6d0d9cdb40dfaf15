#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvs {

/// Half-open byte range into the source text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct LineCol {
  std::size_t line = 1;
  std::size_t column = 1;
};

LineCol line_col(std::string_view source, std::size_t offset);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Span span, std::string message,
              std::vector<std::string> expected = {});

  Span span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span span_;
  std::vector<std::string> expected_;
};

enum class TypeErrorCode {
  UnboundName,
  TypeMismatch,
  ImmutableTarget,
  ArityMismatch,
  InvalidInoutArgument,
  OverlappingInout,
  RecursiveStruct,
  WildcardRead,
};

std::string_view to_string(TypeErrorCode code);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorCode code, Span span, std::string message);

  TypeErrorCode code() const { return code_; }
  Span span() const { return span_; }

 private:
  TypeErrorCode code_;
  Span span_;
};

// StackOverflow is not a language-level trap; it bounds VM/oracle recursion.
enum class TrapKind {
  IndexOutOfBounds,
  OverlapViolation,
  IntegerOverflow,
  DivisionByZero,
  StackOverflow,
};

std::string_view to_string(TrapKind kind);

class RuntimeTrap : public std::runtime_error {
 public:
  RuntimeTrap(TrapKind kind, Span span, std::string message);

  TrapKind kind() const { return kind_; }
  Span span() const { return span_; }

 private:
  TrapKind kind_;
  Span span_;
};

/// `<line>:<col>: error[<code>]: <message>`
std::string render(std::string_view source, const TypeError& error);
std::string render(std::string_view source, const SyntaxError& error);
std::string render(std::string_view source, const RuntimeTrap& trap);

}  // namespace mvs
