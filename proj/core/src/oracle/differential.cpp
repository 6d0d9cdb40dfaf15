#include "mvs/oracle/differential.hpp"

#include <json.hpp>

#include "mvs/oracle/interpreter.hpp"
#include "mvs/pipeline.hpp"
#include "mvs/runtime/vm.hpp"

namespace mvs::oracle {

std::string RunConfig::name() const {
  if (oracle) return "oracle";
  return std::string("vm cow=") + (cow ? "on" : "off") +
         " move_opt=" + (move_opt ? "on" : "off");
}

std::vector<RunConfig> standard_configs() {
  return {
      {true, false, false},
      {false, true, true},
      {false, true, false},
      {false, false, true},
      {false, false, false},
  };
}

bool RunOutcome::leak_free() const {
  if (!stats) return true;
  return stats->allocs == stats->frees && stats->retains == stats->releases;
}

namespace {

nlohmann::ordered_json stats_json(const runtime::RuntimeStats& s) {
  nlohmann::ordered_json j;
  j["deep_copies"] = s.deep_copies;
  j["retains"] = s.retains;
  j["releases"] = s.releases;
  j["moves"] = s.moves;
  j["cow_copies"] = s.cow_copies;
  j["allocs"] = s.allocs;
  j["frees"] = s.frees;
  return j;
}

}  // namespace

std::string DiffReport::to_json() const {
  nlohmann::ordered_json j;
  j["program"] = program;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json entry;
    entry["config"] = r.config.name();
    entry["output"] = r.output ? nlohmann::ordered_json(*r.output) : nullptr;
    entry["trap"] = r.trap ? nlohmann::ordered_json(*r.trap) : nullptr;
    entry["stats"] = r.stats ? stats_json(*r.stats) : nullptr;
    j["results"].push_back(std::move(entry));
  }
  j["status"] = pass ? "PASS" : "FAIL";
  return j.dump();
}

DiffReport differential_run(const TypedProgram& program,
                            std::string_view source,
                            const DiffOptions& options) {
  DiffReport report;
  report.program = std::string(source);

  std::optional<ir::IRProgram> optimized;
  std::optional<ir::IRProgram> plain;

  for (const auto& config : standard_configs()) {
    RunOutcome outcome;
    outcome.config = config;
    try {
      if (config.oracle) {
        outcome.output = interpret_eager(program);
      } else {
        auto& ir = config.move_opt ? optimized : plain;
        if (!ir) ir = compile(program, config.move_opt);
        runtime::ExecOptions exec;
        exec.cow = config.cow;
        exec.debug_checks = options.debug_checks;
        auto result = runtime::execute(*ir, exec);
        outcome.output = std::move(result.output);
        outcome.stats = result.stats;
      }
    } catch (const RuntimeTrap& trap) {
      outcome.trap = render(source, trap);
    }
    report.results.push_back(std::move(outcome));
  }

  report.pass = true;
  const auto& first = report.results.front();
  for (const auto& r : report.results) {
    if (r.output != first.output || r.trap != first.trap) report.pass = false;
  }
  return report;
}

DiffReport differential_run_source(std::string_view source,
                                   const DiffOptions& options) {
  auto program = check_source(source);
  return differential_run(program, source, options);
}

}  // namespace mvs::oracle
