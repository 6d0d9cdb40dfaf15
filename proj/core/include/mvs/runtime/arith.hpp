#pragma once

#include <cstdint>
#include <variant>

#include "mvs/ast.hpp"
#include "mvs/diagnostics.hpp"

namespace mvs::runtime {

/// Checked 64-bit arithmetic. Division truncates toward zero; the remainder
/// takes the sign of the dividend. Comparisons yield 0 or 1.
/// Traps: DivisionByZero for `/` or `%` by zero, IntegerOverflow when the
/// result is not representable.
std::int64_t apply_int(BinaryOp op, std::int64_t a, std::int64_t b, Span span);

/// IEEE-754 arithmetic; comparisons yield an Int. Never traps.
std::variant<std::int64_t, double> apply_float(BinaryOp op, double a, double b);

}  // namespace mvs::runtime
