#include "mvs/pipeline.hpp"

#include <stdexcept>

#include "mvs/parser.hpp"

namespace mvs {

TypedProgram check_source(std::string_view source) {
  return check_program(parse_source(source));
}

ir::IRProgram compile(const TypedProgram& program, bool move_opt) {
  auto ir = ir::lower_program(program);
  if (move_opt) ir = ir::apply_move_optimization(std::move(ir));
  auto problems = ir::verify_linearity(ir);
  if (!problems.empty()) {
    std::string message = "linearity verification failed:";
    for (const auto& p : problems) message += "\n  " + p;
    throw std::logic_error(message);
  }
  return ir;
}

}  // namespace mvs
