#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mvs/pipeline.hpp"
#include "mvs/runtime/vm.hpp"

namespace mvs::test {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(MVS_CORPUS_DIR) + "/" + name;
}

inline runtime::ExecResult run_vm(std::string_view source, bool cow = true,
                                  bool move_opt = true) {
  auto typed = check_source(source);
  auto ir = compile(typed, move_opt);
  runtime::ExecOptions options;
  options.cow = cow;
  options.debug_checks = true;
  return runtime::execute(ir, options);
}

}  // namespace mvs::test
