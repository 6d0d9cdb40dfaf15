#include <set>

#include "mvs/ir.hpp"

namespace mvs::ir {

namespace {

class LinearityVerifier {
 public:
  LinearityVerifier(const Routine& routine, std::vector<std::string>& problems)
      : routine_(routine), problems_(problems) {}

  void run() {
    std::set<SlotId> live;
    for (auto p : routine_.params) {
      defined_.insert(p);
      live.insert(p);
    }
    if (routine_.env != kNoSlot) {
      defined_.insert(routine_.env);
      live.insert(routine_.env);
    }
    bool returned = walk(0, live, /*branch=*/false);
    if (!returned) report(0, "body does not end with return");
  }

 private:
  bool borrowed(SlotId slot) const {
    auto kind = routine_.slot(slot).kind;
    return kind == SlotKind::InoutParam || kind == SlotKind::Env;
  }

  void report(BlockId block, const std::string& message) {
    problems_.push_back(routine_.name + " ^" + std::to_string(block) + ": " +
                        message);
  }

  void use(BlockId block, const std::set<SlotId>& live, SlotId slot,
           const Instruction& ins) {
    if (!live.count(slot)) {
      report(block, std::string(to_string(ins.op)) + " reads dead slot %" +
                        std::to_string(slot));
    }
  }

  void consume(BlockId block, std::set<SlotId>& live, SlotId slot,
               const Instruction& ins) {
    if (borrowed(slot)) {
      report(block, std::string(to_string(ins.op)) +
                        " consumes borrowed slot %" + std::to_string(slot));
      return;
    }
    if (!live.erase(slot)) {
      report(block, std::string(to_string(ins.op)) + " consumes dead slot %" +
                        std::to_string(slot));
    }
  }

  void define(BlockId block, std::set<SlotId>& live, SlotId slot,
              const Instruction& ins) {
    if (!defined_.insert(slot).second) {
      report(block, std::string(to_string(ins.op)) + " redefines slot %" +
                        std::to_string(slot));
    }
    live.insert(slot);
  }

  void consume_steps(BlockId block, std::set<SlotId>& live,
                     const Instruction& ins) {
    for (const auto& step : ins.steps) {
      if (step.kind == Step::Kind::Index) consume(block, live, step.index, ins);
    }
  }

  std::set<SlotId> owned_live(const std::set<SlotId>& live) const {
    std::set<SlotId> out;
    for (auto s : live) {
      if (!borrowed(s)) out.insert(s);
    }
    return out;
  }

  // Returns true when the block ends in Return (or Yield for branches).
  bool walk(BlockId block, std::set<SlotId>& live, bool branch) {
    for (const auto& ins : routine_.blocks[block].instructions) {
      switch (ins.op) {
        case Opcode::MakeInt:
        case Opcode::MakeFloat:
          define(block, live, ins.dst, ins);
          break;
        case Opcode::MakeArray:
        case Opcode::MakeStruct:
        case Opcode::MakeClosure:
        case Opcode::Binary:
          for (auto s : ins.operands) consume(block, live, s, ins);
          define(block, live, ins.dst, ins);
          break;
        case Opcode::Copy:
        case Opcode::LoadEnv:
          use(block, live, ins.operands[0], ins);
          define(block, live, ins.dst, ins);
          break;
        case Opcode::Move:
          consume(block, live, ins.operands[0], ins);
          define(block, live, ins.dst, ins);
          break;
        case Opcode::Destroy:
          consume(block, live, ins.operands[0], ins);
          break;
        case Opcode::LoadPath:
        case Opcode::ResolveLocation:
          use(block, live, ins.operands[0], ins);
          consume_steps(block, live, ins);
          define(block, live, ins.dst, ins);
          break;
        case Opcode::StorePath:
          use(block, live, ins.operands[0], ins);
          consume_steps(block, live, ins);
          consume(block, live, ins.operands[1], ins);
          break;
        case Opcode::OverlapCheck:
          use(block, live, ins.operands[0], ins);
          use(block, live, ins.operands[1], ins);
          break;
        case Opcode::Call:
          use(block, live, ins.operands[0], ins);
          for (std::size_t i = 1; i < ins.operands.size(); ++i) {
            consume(block, live, ins.operands[i], ins);
          }
          define(block, live, ins.dst, ins);
          break;
        case Opcode::CondBr: {
          consume(block, live, ins.operands[0], ins);
          auto then_live = live;
          auto else_live = live;
          bool t = walk(ins.then_block, then_live, true);
          bool e = walk(ins.else_block, else_live, true);
          if (!t || !e) report(block, "branch does not end with yield");
          if (then_live != else_live) {
            report(block, "branches leave different slots live");
          }
          live = then_live;
          define(block, live, ins.dst, ins);
          break;
        }
        case Opcode::Return:
        case Opcode::Yield: {
          if ((ins.op == Opcode::Yield) != branch) {
            report(block, std::string(to_string(ins.op)) + " in wrong block");
          }
          consume(block, live, ins.operands[0], ins);
          if (ins.op == Opcode::Return) {
            auto leaked = owned_live(live);
            for (auto s : leaked) {
              report(block, "slot %" + std::to_string(s) +
                                " still live at return");
            }
          }
          return true;
        }
      }
    }
    return false;
  }

  const Routine& routine_;
  std::vector<std::string>& problems_;
  std::set<SlotId> defined_;
};

}  // namespace

std::vector<std::string> verify_linearity(const IRProgram& program) {
  std::vector<std::string> problems;
  for (const auto& routine : program.routines) {
    LinearityVerifier(routine, problems).run();
  }
  return problems;
}

}  // namespace mvs::ir
