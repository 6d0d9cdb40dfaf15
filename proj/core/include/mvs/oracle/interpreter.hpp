#pragma once

#include <cstddef>
#include <string>

#include "mvs/typechecker.hpp"

namespace mvs::oracle {

struct OracleOptions {
  std::size_t max_call_depth = 1000;
};

/// Reference semantics: every binding, assignment, capture and argument is a
/// full copy of a plain value tree, and inout arguments are copied in at the
/// call and copied back, left to right, when the callee returns. Evaluation
/// and trap order match the VM. Throws RuntimeTrap.
std::string interpret_eager(const TypedProgram& program,
                            const OracleOptions& options = {});

}  // namespace mvs::oracle
