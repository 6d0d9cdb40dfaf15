#include <algorithm>

#include "mvs/ir.hpp"

namespace mvs::ir {

namespace {

bool mentions(const Routine& routine, const Instruction& ins, SlotId slot);

bool block_mentions(const Routine& routine, BlockId block, SlotId slot) {
  const auto& instructions = routine.blocks[block].instructions;
  return std::any_of(instructions.begin(), instructions.end(),
                     [&](const Instruction& ins) {
                       return mentions(routine, ins, slot);
                     });
}

bool mentions(const Routine& routine, const Instruction& ins, SlotId slot) {
  if (ins.dst == slot) return true;
  if (std::find(ins.operands.begin(), ins.operands.end(), slot) !=
      ins.operands.end()) {
    return true;
  }
  for (const auto& step : ins.steps) {
    if (step.kind == Step::Kind::Index && step.index == slot) return true;
  }
  if (ins.op == Opcode::CondBr) {
    // A use in either branch counts as a use.
    return block_mentions(routine, ins.then_block, slot) ||
           block_mentions(routine, ins.else_block, slot);
  }
  return false;
}

void optimize_block(Routine& routine, BlockId block) {
  auto& instructions = routine.blocks[block].instructions;
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    if (instructions[i].op != Opcode::Copy) continue;
    SlotId source = instructions[i].operands[0];
    if (!is_owned(routine.slot(source).kind)) continue;

    // The copy may become a move only if the next mention of the source in
    // this block is its destruction.
    for (std::size_t j = i + 1; j < instructions.size(); ++j) {
      const auto& later = instructions[j];
      if (!mentions(routine, later, source)) continue;
      if (later.op == Opcode::Destroy && later.operands[0] == source) {
        instructions[i].op = Opcode::Move;
        instructions.erase(instructions.begin() +
                           static_cast<std::ptrdiff_t>(j));
      }
      break;
    }
  }
}

}  // namespace

IRProgram apply_move_optimization(IRProgram program) {
  for (auto& routine : program.routines) {
    for (BlockId b = 0; b < routine.blocks.size(); ++b) {
      optimize_block(routine, b);
    }
  }
  return program;
}

}  // namespace mvs::ir
