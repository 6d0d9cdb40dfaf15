#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mvs/ast.hpp"
#include "mvs/lexer.hpp"

namespace mvs {

/// Parses a token stream produced by `tokenize`. Stops at the first error.
Program parse_program(const std::vector<Token>& tokens);

/// tokenize + parse_program.
Program parse_source(std::string_view source);

/// Canonical source form. `parse_source(print_program(p))` is structurally
/// equal to `p`.
std::string print_program(const Program& program);
std::string print_expr(const Expr& expr);

}  // namespace mvs
