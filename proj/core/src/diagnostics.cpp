#include "mvs/diagnostics.hpp"

#include <algorithm>

namespace mvs {

LineCol line_col(std::string_view source, std::size_t offset) {
  offset = std::min(offset, source.size());
  LineCol result;
  for (std::size_t i = 0; i < offset; ++i) {
    if (source[i] == '\n') {
      ++result.line;
      result.column = 1;
    } else {
      ++result.column;
    }
  }
  return result;
}

SyntaxError::SyntaxError(Span span, std::string message,
                         std::vector<std::string> expected)
    : std::runtime_error(std::move(message)),
      span_(span),
      expected_(std::move(expected)) {}

std::string_view to_string(TypeErrorCode code) {
  switch (code) {
    case TypeErrorCode::UnboundName: return "UnboundName";
    case TypeErrorCode::TypeMismatch: return "TypeMismatch";
    case TypeErrorCode::ImmutableTarget: return "ImmutableTarget";
    case TypeErrorCode::ArityMismatch: return "ArityMismatch";
    case TypeErrorCode::InvalidInoutArgument: return "InvalidInoutArgument";
    case TypeErrorCode::OverlappingInout: return "OverlappingInout";
    case TypeErrorCode::RecursiveStruct: return "RecursiveStruct";
    case TypeErrorCode::WildcardRead: return "WildcardRead";
  }
  return "Unknown";
}

TypeError::TypeError(TypeErrorCode code, Span span, std::string message)
    : std::runtime_error(std::move(message)), code_(code), span_(span) {}

std::string_view to_string(TrapKind kind) {
  switch (kind) {
    case TrapKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case TrapKind::OverlapViolation: return "OverlapViolation";
    case TrapKind::IntegerOverflow: return "IntegerOverflow";
    case TrapKind::DivisionByZero: return "DivisionByZero";
    case TrapKind::StackOverflow: return "StackOverflow";
  }
  return "Unknown";
}

RuntimeTrap::RuntimeTrap(TrapKind kind, Span span, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

namespace {

std::string render_at(std::string_view source, Span span, std::string_view code,
                      std::string_view message) {
  auto pos = line_col(source, span.start);
  std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                    ": error[";
  out += code;
  out += "]: ";
  out += message;
  return out;
}

}  // namespace

std::string render(std::string_view source, const TypeError& error) {
  return render_at(source, error.span(), to_string(error.code()), error.what());
}

std::string render(std::string_view source, const SyntaxError& error) {
  std::string message = error.what();
  if (!error.expected().empty()) {
    message += " (expected ";
    for (std::size_t i = 0; i < error.expected().size(); ++i) {
      if (i) message += ", ";
      message += error.expected()[i];
    }
    message += ")";
  }
  return render_at(source, error.span(), "SyntaxError", message);
}

std::string render(std::string_view source, const RuntimeTrap& trap) {
  return render_at(source, trap.span(), to_string(trap.kind()), trap.what());
}

}  // namespace mvs
