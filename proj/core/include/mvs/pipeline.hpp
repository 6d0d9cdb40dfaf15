#pragma once

#include <string_view>

#include "mvs/ir.hpp"
#include "mvs/typechecker.hpp"

namespace mvs {

/// parse_source + check_program. Throws SyntaxError or TypeError.
TypedProgram check_source(std::string_view source);

/// Lowers a checked program, optionally applies move optimization, and runs
/// the linearity verifier. Throws std::logic_error if verification fails.
ir::IRProgram compile(const TypedProgram& program, bool move_opt = true);

}  // namespace mvs
