#include "mvs/runtime/arith.hpp"

#include <limits>
#include <string>

namespace mvs::runtime {

namespace {

[[noreturn]] void overflow(BinaryOp op, std::int64_t a, std::int64_t b,
                           Span span) {
  throw RuntimeTrap(TrapKind::IntegerOverflow, span,
                    "integer overflow in " + std::to_string(a) + " " +
                        std::string(spelling(op)) + " " + std::to_string(b));
}

}  // namespace

std::int64_t apply_int(BinaryOp op, std::int64_t a, std::int64_t b,
                       Span span) {
  std::int64_t out = 0;
  switch (op) {
    case BinaryOp::Add:
      if (__builtin_add_overflow(a, b, &out)) overflow(op, a, b, span);
      return out;
    case BinaryOp::Sub:
      if (__builtin_sub_overflow(a, b, &out)) overflow(op, a, b, span);
      return out;
    case BinaryOp::Mul:
      if (__builtin_mul_overflow(a, b, &out)) overflow(op, a, b, span);
      return out;
    case BinaryOp::Div:
    case BinaryOp::Rem:
      if (b == 0) {
        throw RuntimeTrap(TrapKind::DivisionByZero, span, "division by zero");
      }
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
        if (op == BinaryOp::Rem) return 0;
        overflow(op, a, b, span);
      }
      return op == BinaryOp::Div ? a / b : a % b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
  }
  return 0;
}

std::variant<std::int64_t, double> apply_float(BinaryOp op, double a,
                                               double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Rem: return 0.0;  // rejected by the type checker
    case BinaryOp::Eq: return std::int64_t{a == b};
    case BinaryOp::Ne: return std::int64_t{a != b};
    case BinaryOp::Lt: return std::int64_t{a < b};
    case BinaryOp::Le: return std::int64_t{a <= b};
    case BinaryOp::Gt: return std::int64_t{a > b};
    case BinaryOp::Ge: return std::int64_t{a >= b};
  }
  return 0.0;
}

}  // namespace mvs::runtime
