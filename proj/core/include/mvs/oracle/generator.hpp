#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mvs/ast.hpp"

namespace mvs::oracle {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t size_budget = 50;
  std::size_t max_depth = 4;
  std::size_t struct_count = 2;
  bool enable_closures = true;
  bool enable_inout = true;
};

/// Deterministic, type-directed generation of a well-typed program. Array
/// lengths are fixed per array type, so every generated subscript is in
/// bounds; integer operands stay small enough that no arithmetic traps, and
/// inout arguments of one call never overlap.
std::string generate_source(const GenConfig& config);

/// parse_source(generate_source(config)).
Program generate_program(const GenConfig& config);

/// A program `var p = v in var q = p in <mutations of q> in p` together with
/// the program `v`; both must print the same value.
struct CopyMutateCase {
  std::string original;
  std::string program;
};

CopyMutateCase generate_copy_mutate(std::uint64_t seed,
                                    std::size_t size_budget = 30);

}  // namespace mvs::oracle
