#include <cassert>

#include "mvs/ir.hpp"

namespace mvs::ir {

std::string_view to_string(SlotKind kind) {
  switch (kind) {
    case SlotKind::Temp: return "temp";
    case SlotKind::Local: return "local";
    case SlotKind::Param: return "param";
    case SlotKind::InoutParam: return "inout";
    case SlotKind::Env: return "env";
    case SlotKind::Location: return "loc";
  }
  return "?";
}

bool is_owned(SlotKind kind) {
  return kind == SlotKind::Temp || kind == SlotKind::Local ||
         kind == SlotKind::Param;
}

std::string_view to_string(Opcode op) {
  switch (op) {
    case Opcode::MakeInt: return "make_int";
    case Opcode::MakeFloat: return "make_float";
    case Opcode::MakeArray: return "make_array";
    case Opcode::MakeStruct: return "make_struct";
    case Opcode::MakeClosure: return "make_closure";
    case Opcode::Copy: return "copy";
    case Opcode::Move: return "move";
    case Opcode::Destroy: return "destroy";
    case Opcode::LoadPath: return "load_path";
    case Opcode::StorePath: return "store_path";
    case Opcode::LoadEnv: return "load_env";
    case Opcode::ResolveLocation: return "resolve_location";
    case Opcode::OverlapCheck: return "overlap_check";
    case Opcode::Call: return "call";
    case Opcode::Binary: return "binary";
    case Opcode::CondBr: return "cond_br";
    case Opcode::Return: return "return";
    case Opcode::Yield: return "yield";
  }
  return "?";
}

namespace {

class Lowerer {
 public:
  explicit Lowerer(const TypedProgram& program) : program_(program) {
    out_.structs = program.structs;
  }

  IRProgram run() {
    auto main = new_routine("main", Type());
    Context context{main, 0, {}};
    cx_ = &context;
    auto result = lower_value(*program_.program.entry);
    emit({.op = Opcode::Return, .operands = {result},
          .span = program_.program.entry->span});
    cx_ = nullptr;
    out_.entry = main;
    register_metatypes();
    return std::move(out_);
  }

 private:
  struct Operand {
    SlotId slot;
    bool temp;
  };

  struct Context {
    RoutineId routine;
    BlockId block;
    std::vector<std::pair<std::string, SlotId>> scope;
  };

  Routine& routine() { return out_.routines[cx_->routine]; }

  RoutineId new_routine(std::string name, Type type) {
    Routine r;
    r.id = static_cast<RoutineId>(out_.routines.size());
    r.name = std::move(name);
    r.type = std::move(type);
    r.blocks.emplace_back();
    out_.routines.push_back(std::move(r));
    return out_.routines.back().id;
  }

  BlockId new_block() {
    routine().blocks.emplace_back();
    return static_cast<BlockId>(routine().blocks.size() - 1);
  }

  SlotId new_slot(std::string name, Type type, SlotKind kind,
                  bool is_mutable = false) {
    auto& slots = routine().slots;
    slots.push_back(SlotInfo{std::move(name), std::move(type), kind, is_mutable});
    return static_cast<SlotId>(slots.size() - 1);
  }

  SlotId temp(const Type& type) { return new_slot("", type, SlotKind::Temp); }

  void emit(Instruction ins) {
    routine().blocks[cx_->block].instructions.push_back(std::move(ins));
  }

  SlotId lookup(const std::string& name) const {
    for (auto it = cx_->scope.rbegin(); it != cx_->scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    assert(false && "name resolved by the type checker");
    return kNoSlot;
  }

  std::vector<Step> lower_steps(const PathExpr& path) {
    std::vector<Step> steps;
    for (const auto& acc : path.accessors) {
      Step step;
      if (acc.kind == Accessor::Kind::Field) {
        step.kind = Step::Kind::Field;
        step.field = static_cast<std::uint32_t>(acc.field_index);
        step.field_name = acc.field;
      } else {
        step.kind = Step::Kind::Index;
        step.index = lower_value(*acc.index);
      }
      steps.push_back(std::move(step));
    }
    return steps;
  }

  // A bare variable is used in place; anything else becomes a fresh temp.
  Operand lower_operand(const Expr& e) {
    if (e.is<PathExpr>() && e.as<PathExpr>().accessors.empty()) {
      return {lookup(e.as<PathExpr>().root), false};
    }
    return {lower_value(e), true};
  }

  // The explicit copy performed by bindings, assignments and arguments.
  void copy_into(Operand src, SlotId dst, Span span) {
    emit({.op = Opcode::Copy, .dst = dst, .operands = {src.slot}, .span = span});
    if (src.temp) {
      emit({.op = Opcode::Destroy, .operands = {src.slot}, .span = span});
    }
  }

  SlotId lower_value(const Expr& e) {
    return std::visit([&](const auto& n) { return lower(n, e); }, e.node);
  }

  SlotId lower(const IntLit& lit, const Expr& e) {
    auto t = temp(e.type);
    emit({.op = Opcode::MakeInt, .dst = t, .int_value = lit.value,
          .span = e.span});
    return t;
  }

  SlotId lower(const FloatLit& lit, const Expr& e) {
    auto t = temp(e.type);
    emit({.op = Opcode::MakeFloat, .dst = t, .float_value = lit.value,
          .span = e.span});
    return t;
  }

  SlotId lower(const ArrayLit& lit, const Expr& e) {
    std::vector<SlotId> elements;
    for (const auto& el : lit.elements) elements.push_back(lower_value(*el));
    auto t = temp(e.type);
    emit({.op = Opcode::MakeArray, .dst = t, .operands = std::move(elements),
          .type = e.type.element(), .span = e.span});
    return t;
  }

  SlotId lower(const StructInit& init, const Expr& e) {
    std::vector<SlotId> fields;
    for (const auto& arg : init.arguments) fields.push_back(lower_value(*arg));
    auto t = temp(e.type);
    emit({.op = Opcode::MakeStruct, .dst = t, .operands = std::move(fields),
          .type = e.type,
          .index = static_cast<std::uint32_t>(
              program_.structs.index_of(init.name)),
          .span = e.span});
    return t;
  }

  SlotId lower(const FuncLit& lit, const Expr& e) {
    auto body = lower_function(lit, e.type);
    std::vector<SlotId> captured;
    for (const auto& cap : lit.captures) {
      auto t = temp(cap.type);
      emit({.op = Opcode::Copy, .dst = t, .operands = {lookup(cap.name)},
            .span = e.span});
      captured.push_back(t);
    }
    const auto& env = out_.metatypes.at(env_metatype_key(out_.routines[body]));
    auto t = temp(e.type);
    emit({.op = Opcode::MakeClosure, .dst = t, .operands = std::move(captured),
          .type = e.type, .routine = body,
          .copy_routine = env.copy_routine,
          .destroy_routine = env.destroy_routine, .span = e.span});
    return t;
  }

  RoutineId lower_function(const FuncLit& lit, const Type& type) {
    auto id = new_routine("fn" + std::to_string(out_.routines.size()), type);
    Context inner{id, 0, {}};
    Context* outer = cx_;
    cx_ = &inner;

    std::vector<SlotId> owned;
    for (const auto& p : lit.params) {
      bool inout = p.passing == Passing::Inout;
      auto slot = new_slot(p.name, p.type,
                           inout ? SlotKind::InoutParam : SlotKind::Param,
                           inout);
      routine().params.push_back(slot);
      inner.scope.emplace_back(p.name, slot);
      if (!inout) owned.push_back(slot);
    }
    auto env = new_slot("env", Type(), SlotKind::Env);
    routine().env = env;

    TypeMetadata env_meta;
    env_meta.trivial = false;
    auto key = env_metatype_key(routine());
    env_meta.copy_routine = "copy<" + key + ">";
    env_meta.destroy_routine = "destroy<" + key + ">";
    SynthesizedRoutine copy{env_meta.copy_routine,
                            SynthesizedRoutine::Kind::EnvCopy, {}};
    SynthesizedRoutine destroy{env_meta.destroy_routine,
                               SynthesizedRoutine::Kind::EnvDestroy, {}};

    for (std::size_t i = 0; i < lit.captures.size(); ++i) {
      const auto& cap = lit.captures[i];
      auto meta = synthesize_metatype(cap.type, program_.structs,
                                      &out_.synthesized);
      env_meta.size_bytes += meta.size_bytes;
      copy.parts.push_back(meta.copy_routine);
      destroy.parts.push_back(meta.destroy_routine);

      auto slot = new_slot(cap.name, cap.type, SlotKind::Local,
                           cap.mutability == Mutability::Var);
      emit({.op = Opcode::LoadEnv, .dst = slot, .operands = {env},
            .index = static_cast<std::uint32_t>(i), .span = lit.body->span});
      inner.scope.emplace_back(cap.name, slot);
      owned.push_back(slot);
    }
    out_.metatypes[key] = env_meta;
    out_.synthesized[copy.name] = copy;
    out_.synthesized[destroy.name] = destroy;

    auto result = lower_value(*lit.body);
    for (auto it = owned.rbegin(); it != owned.rend(); ++it) {
      emit({.op = Opcode::Destroy, .operands = {*it}, .span = lit.body->span});
    }
    emit({.op = Opcode::Return, .operands = {result}, .span = lit.body->span});

    cx_ = outer;
    return id;
  }

  SlotId lower(const PathExpr& path, const Expr& e) {
    auto root = lookup(path.root);
    auto t = temp(e.type);
    if (path.accessors.empty()) {
      emit({.op = Opcode::Copy, .dst = t, .operands = {root}, .span = e.span});
      return t;
    }
    auto steps = lower_steps(path);
    emit({.op = Opcode::LoadPath, .dst = t, .operands = {root},
          .steps = std::move(steps), .span = e.span});
    return t;
  }

  SlotId lower(const Binary& b, const Expr& e) {
    auto lhs = lower_value(*b.lhs);
    auto rhs = lower_value(*b.rhs);
    auto t = temp(e.type);
    emit({.op = Opcode::Binary, .dst = t, .operands = {lhs, rhs},
          .binary_op = b.op, .span = e.span});
    return t;
  }

  SlotId lower(const Cond& c, const Expr& e) {
    auto cond = lower_value(*c.condition);
    auto t = temp(e.type);
    auto then_block = new_block();
    auto else_block = new_block();
    emit({.op = Opcode::CondBr, .dst = t, .operands = {cond},
          .then_block = then_block, .else_block = else_block, .span = e.span});

    auto saved = cx_->block;
    cx_->block = then_block;
    auto then_value = lower_value(*c.then_branch);
    emit({.op = Opcode::Yield, .operands = {then_value},
          .span = c.then_branch->span});
    cx_->block = else_block;
    auto else_value = lower_value(*c.else_branch);
    emit({.op = Opcode::Yield, .operands = {else_value},
          .span = c.else_branch->span});
    cx_->block = saved;
    return t;
  }

  SlotId lower(const Binding& b, const Expr& e) {
    if (b.name == kWildcard) {
      auto t = lower_value(*b.initializer);
      emit({.op = Opcode::Destroy, .operands = {t}, .span = e.span});
      return lower_value(*b.body);
    }
    auto init = lower_operand(*b.initializer);
    auto slot = new_slot(b.name, b.initializer->type, SlotKind::Local,
                         b.mutability == Mutability::Var);
    copy_into(init, slot, b.initializer->span);
    cx_->scope.emplace_back(b.name, slot);
    auto result = lower_value(*b.body);
    cx_->scope.pop_back();
    emit({.op = Opcode::Destroy, .operands = {slot}, .span = e.span});
    return result;
  }

  SlotId lower(const Assign& a, const Expr& e) {
    if (a.target.is_wildcard()) {
      auto t = lower_value(*a.value);
      emit({.op = Opcode::Destroy, .operands = {t}, .span = e.span});
      return lower_value(*a.body);
    }
    auto root = lookup(a.target.root);
    auto steps = lower_steps(a.target);
    auto value = lower_operand(*a.value);
    auto t = temp(a.value->type);
    copy_into(value, t, a.value->span);
    emit({.op = Opcode::StorePath, .operands = {root, t},
          .steps = std::move(steps), .span = e.span});
    return lower_value(*a.body);
  }

  SlotId lower(const Call& call, const Expr& e) {
    SlotId callee = kNoSlot;
    bool callee_temp = false;
    if (call.callee->is<PathExpr>() &&
        call.callee->as<PathExpr>().accessors.empty()) {
      callee = lookup(call.callee->as<PathExpr>().root);
    } else {
      callee = lower_value(*call.callee);
      callee_temp = true;
    }

    std::vector<SlotId> args(call.arguments.size(), kNoSlot);
    for (std::size_t i = 0; i < call.arguments.size(); ++i) {
      const auto& arg = call.arguments[i];
      if (arg.inout) continue;
      auto value = lower_operand(*arg.value);
      args[i] = temp(arg.value->type);
      copy_into(value, args[i], arg.span);
    }
    // All index expressions run before the first location is resolved, so no
    // user code executes while a location is outstanding.
    std::vector<std::vector<Step>> steps(call.arguments.size());
    for (std::size_t i = 0; i < call.arguments.size(); ++i) {
      if (call.arguments[i].inout) {
        steps[i] = lower_steps(call.arguments[i].path);
      }
    }
    for (std::size_t i = 0; i < call.arguments.size(); ++i) {
      const auto& arg = call.arguments[i];
      if (!arg.inout) continue;
      auto root = lookup(arg.path.root);
      args[i] = new_slot("", *call.callee->type.params()[i].type,
                         SlotKind::Location);
      emit({.op = Opcode::ResolveLocation, .dst = args[i], .operands = {root},
            .steps = std::move(steps[i]), .span = arg.span});
    }
    for (auto [x, y] : call.maybe_overlaps) {
      emit({.op = Opcode::OverlapCheck, .operands = {args[x], args[y]},
            .span = call.arguments[y].span});
    }

    std::vector<SlotId> operands{callee};
    operands.insert(operands.end(), args.begin(), args.end());
    auto t = temp(e.type);
    emit({.op = Opcode::Call, .dst = t, .operands = std::move(operands),
          .span = e.span});
    if (callee_temp) {
      emit({.op = Opcode::Destroy, .operands = {callee}, .span = e.span});
    }
    return t;
  }

  void register_type(const Type& type) {
    if (!type.valid()) return;
    auto key = type.str();
    if (out_.metatypes.count(key)) return;
    out_.metatypes.emplace(
        key, synthesize_metatype(type, program_.structs, &out_.synthesized));
  }

  void register_metatypes() {
    for (const auto& r : out_.routines) {
      for (const auto& slot : r.slots) register_type(slot.type);
      for (const auto& block : r.blocks) {
        for (const auto& ins : block.instructions) {
          if (ins.op == Opcode::MakeArray) register_type(ins.type);
        }
      }
    }
  }

  const TypedProgram& program_;
  IRProgram out_;
  Context* cx_ = nullptr;
};

}  // namespace

IRProgram lower_program(const TypedProgram& program) {
  return Lowerer(program).run();
}

}  // namespace mvs::ir
