#include <sstream>

#include "mvs/ir.hpp"

namespace mvs::ir {

namespace {

std::string slot_name(const Routine& r, SlotId id) {
  if (id == kNoSlot) return "_";
  std::string out = "%" + std::to_string(id);
  const auto& name = r.slot(id).name;
  if (!name.empty()) out += "(" + name + ")";
  return out;
}

std::string steps_text(const Routine& r, const std::vector<Step>& steps) {
  std::string out;
  for (const auto& s : steps) {
    if (s.kind == Step::Kind::Field) {
      out += "." + s.field_name;
    } else {
      out += "[" + slot_name(r, s.index) + "]";
    }
  }
  return out;
}

std::string kind_name(SynthesizedRoutine::Kind kind) {
  using K = SynthesizedRoutine::Kind;
  switch (kind) {
    case K::ArrayCopy: return "array_copy";
    case K::ArrayDestroy: return "array_destroy";
    case K::StructCopy: return "struct_copy";
    case K::StructDestroy: return "struct_destroy";
    case K::ClosureCopy: return "closure_copy";
    case K::ClosureDestroy: return "closure_destroy";
    case K::EnvCopy: return "env_copy";
    case K::EnvDestroy: return "env_destroy";
  }
  return "?";
}

void dump_instruction(std::ostream& os, const IRProgram& p, const Routine& r,
                      const Instruction& ins, std::size_t& counter) {
  os << "    " << counter++ << ": " << to_string(ins.op);
  if (ins.dst != kNoSlot) os << " " << slot_name(r, ins.dst) << " <-";
  switch (ins.op) {
    case Opcode::MakeInt:
      os << " " << ins.int_value;
      break;
    case Opcode::MakeFloat:
      os << " " << ins.float_value;
      break;
    case Opcode::MakeClosure:
      os << " " << p.routines[ins.routine].name << " env{";
      for (std::size_t i = 0; i < ins.operands.size(); ++i) {
        os << (i ? ", " : "") << slot_name(r, ins.operands[i]);
      }
      os << "} " << ins.copy_routine << " " << ins.destroy_routine;
      break;
    case Opcode::MakeStruct:
      os << " " << ins.type.str();
      [[fallthrough]];
    case Opcode::MakeArray:
      os << " [";
      for (std::size_t i = 0; i < ins.operands.size(); ++i) {
        os << (i ? ", " : "") << slot_name(r, ins.operands[i]);
      }
      os << "]";
      break;
    case Opcode::LoadPath:
    case Opcode::ResolveLocation:
      os << " " << slot_name(r, ins.operands[0]) << steps_text(r, ins.steps);
      break;
    case Opcode::StorePath:
      os << " " << slot_name(r, ins.operands[0]) << steps_text(r, ins.steps)
         << " <- " << slot_name(r, ins.operands[1]);
      break;
    case Opcode::LoadEnv:
      os << " " << slot_name(r, ins.operands[0]) << "#" << ins.index;
      break;
    case Opcode::Call:
      os << " " << slot_name(r, ins.operands[0]) << "(";
      for (std::size_t i = 1; i < ins.operands.size(); ++i) {
        os << (i > 1 ? ", " : "") << slot_name(r, ins.operands[i]);
      }
      os << ")";
      break;
    case Opcode::Binary:
      os << " " << slot_name(r, ins.operands[0]) << " "
         << spelling(ins.binary_op) << " " << slot_name(r, ins.operands[1]);
      break;
    case Opcode::CondBr:
      os << " " << slot_name(r, ins.operands[0]) << " ? ^" << ins.then_block
         << " : ^" << ins.else_block;
      break;
    default:
      for (auto s : ins.operands) os << " " << slot_name(r, s);
      break;
  }
  os << "\n";
}

}  // namespace

std::string dump_ir(const IRProgram& program) {
  std::ostringstream os;
  for (const auto& r : program.routines) {
    os << "routine " << r.name;
    if (r.type.valid()) os << " : " << r.type.str();
    if (r.id == program.entry) os << " [entry]";
    os << "\n  slots:\n";
    for (SlotId i = 0; i < r.slots.size(); ++i) {
      const auto& s = r.slots[i];
      os << "    %" << i << " " << to_string(s.kind);
      if (!s.name.empty()) os << " " << s.name;
      if (s.type.valid()) os << " : " << s.type.str();
      if (s.is_mutable) os << " mut";
      os << "\n";
    }
    std::size_t counter = 0;
    for (BlockId b = 0; b < r.blocks.size(); ++b) {
      os << "  ^" << b << ":\n";
      for (const auto& ins : r.blocks[b].instructions) {
        dump_instruction(os, program, r, ins, counter);
      }
    }
    os << "\n";
  }
  os << "metatypes:\n";
  for (const auto& [key, meta] : program.metatypes) {
    os << "  " << key << " size=" << meta.size_bytes
       << (meta.trivial ? " trivial" : "") << " copy=" << meta.copy_routine
       << " destroy=" << meta.destroy_routine << "\n";
  }
  os << "synthesized:\n";
  for (const auto& [name, routine] : program.synthesized) {
    os << "  " << name << " = " << kind_name(routine.kind) << "(";
    for (std::size_t i = 0; i < routine.parts.size(); ++i) {
      os << (i ? ", " : "") << routine.parts[i];
    }
    os << ")\n";
  }
  return os.str();
}

}  // namespace mvs::ir
