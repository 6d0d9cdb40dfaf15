#pragma once

#include <cstddef>
#include <string>

#include "mvs/ir.hpp"
#include "mvs/runtime/value.hpp"

namespace mvs::runtime {

struct ExecOptions {
  bool cow = true;
  /// Verifies reference counts against a full store scan at every call
  /// boundary and asserts that writes only go through mutable roots.
  bool debug_checks = false;
  std::size_t max_call_depth = 1000;
};

struct ExecResult {
  std::string output;
  RuntimeStats stats;
  bool store_empty = true;
};

/// Runs the entry routine, formats its value and destroys it. Throws
/// RuntimeTrap; throws std::logic_error when a debug check fails.
ExecResult execute(const ir::IRProgram& program, const ExecOptions& options);

}  // namespace mvs::runtime
