#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvs/runtime/value.hpp"
#include "mvs/typechecker.hpp"

namespace mvs::oracle {

/// One execution configuration: the eager oracle, or the VM with the given
/// toggles.
struct RunConfig {
  bool oracle = false;
  bool cow = true;
  bool move_opt = true;

  std::string name() const;
};

/// The oracle followed by the VM under {cow on/off} x {move opt on/off}.
std::vector<RunConfig> standard_configs();

struct RunOutcome {
  RunConfig config;
  std::optional<std::string> output;
  std::optional<std::string> trap;  // rendered diagnostic
  std::optional<runtime::RuntimeStats> stats;

  /// allocs == frees and retains == releases; vacuously true without stats.
  bool leak_free() const;
};

struct DiffOptions {
  bool debug_checks = false;
};

struct DiffReport {
  std::string program;
  std::vector<RunOutcome> results;
  bool pass = false;

  /// {"program":…,"results":[{"config":…,"output":…,"trap":…,"stats":…}],
  ///  "status":"PASS|FAIL"}
  std::string to_json() const;
};

/// Runs `program` under every configuration. PASS iff all outputs and trap
/// outcomes agree. `source` is used for the report and trap positions.
DiffReport differential_run(const TypedProgram& program,
                            std::string_view source,
                            const DiffOptions& options = {});

/// check_source + differential_run. Throws SyntaxError or TypeError.
DiffReport differential_run_source(std::string_view source,
                                   const DiffOptions& options = {});

}  // namespace mvs::oracle
