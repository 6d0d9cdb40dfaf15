#include "mvs/runtime/vm.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "mvs/runtime/arith.hpp"
#include "mvs/runtime/location.hpp"
#include "mvs/runtime/store.hpp"

namespace mvs::runtime {

namespace {

using ir::Instruction;
using ir::Opcode;
using ir::SlotId;

struct EnvRef {
  EnvId id = 0;
};

using Slot = std::variant<std::monostate, Value, Location, EnvRef>;

struct Frame {
  const ir::Routine* routine = nullptr;
  std::vector<Slot> slots;
};

class Machine {
 public:
  Machine(const ir::IRProgram& program, const ExecOptions& options)
      : program_(program), options_(options), store_(options.cow) {}

  ExecResult run() {
    const auto& main = program_.routines.at(program_.entry);
    frames_.push_back(Frame{&main, std::vector<Slot>(main.slots.size())});
    Value result = run_block(0, 0);
    frames_.pop_back();

    ExecResult out;
    out.output = format_value(result, store_, program_.structs);
    store_.destroy_value(result);
    out.stats = store_.stats();
    out.store_empty = store_.empty();
    if (options_.debug_checks && !out.store_empty) {
      throw std::logic_error("store not empty after run: " +
                             std::to_string(store_.live_arrays()) +
                             " arrays, " + std::to_string(store_.live_envs()) +
                             " environments");
    }
    return out;
  }

 private:
  Slot& slot(std::size_t frame, SlotId id) { return frames_[frame].slots[id]; }

  Value take(std::size_t frame, SlotId id) {
    auto& s = slot(frame, id);
    Value v = std::move(std::get<Value>(s));
    s = std::monostate{};
    return v;
  }

  std::int64_t take_int(std::size_t frame, SlotId id) {
    return take(frame, id).as<std::int64_t>();
  }

  Value& deref(const Location& loc) {
    Value* v = nullptr;
    if (loc.kind == Location::Kind::FrameSlot) {
      v = &std::get<Value>(slot(loc.frame, loc.slot));
    } else {
      v = &store_.array(loc.storage).elements[loc.index];
    }
    for (auto f : loc.fields) v = &v->as<StructValue>().fields[f];
    return *v;
  }

  // The value held by a slot, looking through inout locations.
  Value& read(std::size_t frame, SlotId id) {
    auto& s = slot(frame, id);
    if (auto* loc = std::get_if<Location>(&s)) return deref(*loc);
    return std::get<Value>(s);
  }

  void check_bounds(std::int64_t index, std::size_t n, Span span) {
    if (index < 0 || static_cast<std::uint64_t>(index) >= n) {
      throw RuntimeTrap(TrapKind::IndexOutOfBounds, span,
                        "index " + std::to_string(index) +
                            " out of bounds for array of length " +
                            std::to_string(n));
    }
  }

  void check_mutable_root(std::size_t frame, SlotId root) {
    if (!options_.debug_checks) return;
    const auto& info = frames_[frame].routine->slot(root);
    if (!info.is_mutable && info.kind != ir::SlotKind::InoutParam) {
      throw std::logic_error("write through immutable slot " + info.name);
    }
  }

  // Navigates to the place denoted by root.steps, making every traversed
  // array block unique so the place can be mutated in place.
  Location resolve(std::size_t frame, const Instruction& ins) {
    SlotId root = ins.operands[0];
    check_mutable_root(frame, root);
    Location loc;
    if (auto* outer = std::get_if<Location>(&slot(frame, root))) {
      loc = *outer;
    } else {
      loc.frame = loc.root_frame = frame;
      loc.slot = loc.root_slot = root;
    }
    for (const auto& step : ins.steps) {
      if (step.kind == ir::Step::Kind::Field) {
        loc.fields.push_back(step.field);
        loc.path.push_back({false, step.field});
        continue;
      }
      auto index = take_int(frame, step.index);
      auto& array = deref(loc).as<ArrayValue>();
      check_bounds(index, store_.array(array.id).n(), ins.span);
      store_.make_unique(array);
      loc.kind = Location::Kind::ArrayElement;
      loc.storage = array.id;
      loc.index = static_cast<std::size_t>(index);
      loc.fields.clear();
      loc.path.push_back({true, index});
    }
    if (options_.debug_checks && loc.kind == Location::Kind::ArrayElement &&
        store_.array(loc.storage).r != 1) {
      throw std::logic_error("resolved location in shared storage");
    }
    return loc;
  }

  Value load_path(std::size_t frame, const Instruction& ins) {
    Value* v = &read(frame, ins.operands[0]);
    for (const auto& step : ins.steps) {
      if (step.kind == ir::Step::Kind::Field) {
        v = &v->as<StructValue>().fields[step.field];
        continue;
      }
      auto index = take_int(frame, step.index);
      auto& block = store_.array(v->as<ArrayValue>().id);
      check_bounds(index, block.n(), ins.span);
      v = &block.elements[static_cast<std::size_t>(index)];
    }
    return store_.copy_value(*v);
  }

  std::size_t element_size(const Instruction& ins) {
    auto it = elem_sizes_.find(&ins);
    if (it != elem_sizes_.end()) return it->second;
    auto size = program_.metatype(ins.type).size_bytes;
    elem_sizes_.emplace(&ins, size);
    return size;
  }

  Value call(std::size_t frame, const Instruction& ins) {
    FuncValue callee = read(frame, ins.operands[0]).as<FuncValue>();
    const auto& routine = program_.routines.at(callee.routine);

    std::vector<Slot> args;
    args.reserve(ins.operands.size() - 1);
    for (std::size_t i = 1; i < ins.operands.size(); ++i) {
      auto& s = slot(frame, ins.operands[i]);
      args.push_back(std::move(s));
      s = std::monostate{};
    }

    if (frames_.size() >= options_.max_call_depth) {
      throw RuntimeTrap(TrapKind::StackOverflow, ins.span,
                        "call depth exceeds " +
                            std::to_string(options_.max_call_depth));
    }
    frames_.push_back(Frame{&routine, std::vector<Slot>(routine.slots.size())});
    auto callee_frame = frames_.size() - 1;
    auto& slots = frames_.back().slots;
    for (std::size_t i = 0; i < routine.params.size(); ++i) {
      slots[routine.params[i]] = std::move(args[i]);
    }
    slots[routine.env] = EnvRef{callee.env};

    if (options_.debug_checks) check_refcounts();
    Value result = run_block(callee_frame, 0);
    frames_.pop_back();
    if (options_.debug_checks) check_refcounts(&result);
    return result;
  }

  Value binary(std::size_t frame, const Instruction& ins) {
    Value lhs = take(frame, ins.operands[0]);
    Value rhs = take(frame, ins.operands[1]);
    if (lhs.is<std::int64_t>()) {
      return Value{apply_int(ins.binary_op, lhs.as<std::int64_t>(),
                             rhs.as<std::int64_t>(), ins.span)};
    }
    auto r = apply_float(ins.binary_op, lhs.as<double>(), rhs.as<double>());
    if (auto* i = std::get_if<std::int64_t>(&r)) return Value{*i};
    return Value{std::get<double>(r)};
  }

  std::vector<Value> take_all(std::size_t frame, const Instruction& ins) {
    std::vector<Value> values;
    values.reserve(ins.operands.size());
    for (auto s : ins.operands) values.push_back(take(frame, s));
    return values;
  }

  Value run_block(std::size_t frame, ir::BlockId block) {
    const auto& routine = *frames_[frame].routine;
    for (const auto& ins : routine.blocks[block].instructions) {
      switch (ins.op) {
        case Opcode::MakeInt:
          slot(frame, ins.dst) = Value{ins.int_value};
          break;
        case Opcode::MakeFloat:
          slot(frame, ins.dst) = Value{ins.float_value};
          break;
        case Opcode::MakeArray: {
          auto id = store_.allocate_array(take_all(frame, ins),
                                          element_size(ins));
          slot(frame, ins.dst) = Value{ArrayValue{id}};
          break;
        }
        case Opcode::MakeStruct:
          slot(frame, ins.dst) = Value{StructValue{ins.index, take_all(frame, ins)}};
          break;
        case Opcode::MakeClosure: {
          auto env = store_.allocate_env(take_all(frame, ins));
          slot(frame, ins.dst) = Value{FuncValue{
              ins.routine, env, ins.copy_routine, ins.destroy_routine}};
          break;
        }
        case Opcode::Copy: {
          auto v = store_.copy_value(read(frame, ins.operands[0]));
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::Move:
          slot(frame, ins.dst) = take(frame, ins.operands[0]);
          ++store_.stats().moves;
          break;
        case Opcode::Destroy: {
          auto v = take(frame, ins.operands[0]);
          store_.destroy_value(v);
          break;
        }
        case Opcode::LoadPath: {
          auto v = load_path(frame, ins);
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::StorePath: {
          auto loc = resolve(frame, ins);
          auto value = take(frame, ins.operands[1]);
          auto& target = deref(loc);
          Value old = std::move(target);
          target = std::move(value);
          store_.destroy_value(old);
          break;
        }
        case Opcode::LoadEnv: {
          auto env = std::get<EnvRef>(slot(frame, ins.operands[0])).id;
          auto v = store_.copy_value(store_.env(env).entries.at(ins.index));
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::ResolveLocation: {
          auto loc = resolve(frame, ins);
          slot(frame, ins.dst) = std::move(loc);
          break;
        }
        case Opcode::OverlapCheck:
          check_dynamic_overlap(std::get<Location>(slot(frame, ins.operands[0])),
                                std::get<Location>(slot(frame, ins.operands[1])),
                                ins.span);
          break;
        case Opcode::Call: {
          auto v = call(frame, ins);
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::Binary: {
          auto v = binary(frame, ins);
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::CondBr: {
          auto c = take_int(frame, ins.operands[0]);
          auto v = run_block(frame, c != 0 ? ins.then_block : ins.else_block);
          slot(frame, ins.dst) = std::move(v);
          break;
        }
        case Opcode::Return:
        case Opcode::Yield:
          return take(frame, ins.operands[0]);
      }
    }
    throw std::logic_error("block without terminator in " + routine.name);
  }

  void count_refs(const Value& v, std::map<StorageId, std::size_t>& refs,
                  std::map<EnvId, std::size_t>& envs) {
    if (auto* s = std::get_if<StructValue>(&v.data)) {
      for (const auto& f : s->fields) count_refs(f, refs, envs);
    } else if (auto* a = std::get_if<ArrayValue>(&v.data)) {
      ++refs[a->id];
    } else if (auto* f = std::get_if<FuncValue>(&v.data)) {
      ++envs[f->env];
    }
  }

  // `in_flight` is a value owned by the interpreter itself, such as a call
  // result not yet stored in a slot.
  void check_refcounts(const Value* in_flight = nullptr) {
    std::map<StorageId, std::size_t> refs;
    std::map<EnvId, std::size_t> envs;
    if (in_flight) count_refs(*in_flight, refs, envs);
    for (const auto& frame : frames_) {
      for (const auto& s : frame.slots) {
        if (auto* v = std::get_if<Value>(&s)) count_refs(*v, refs, envs);
      }
    }
    for (const auto& [id, block] : store_.arrays()) {
      for (const auto& e : block.elements) count_refs(e, refs, envs);
    }
    for (const auto& [id, record] : store_.envs()) {
      for (const auto& e : record.entries) count_refs(e, refs, envs);
    }
    for (const auto& [id, block] : store_.arrays()) {
      if (refs[id] != block.r) {
        throw std::logic_error("block " + std::to_string(id) + " has r=" +
                               std::to_string(block.r) + " but " +
                               std::to_string(refs[id]) + " holders");
      }
    }
    for (const auto& [id, record] : store_.envs()) {
      if (envs[id] != 1) {
        throw std::logic_error("environment " + std::to_string(id) + " has " +
                               std::to_string(envs[id]) + " holders");
      }
    }
  }

  const ir::IRProgram& program_;
  ExecOptions options_;
  Store store_;
  std::deque<Frame> frames_;
  std::unordered_map<const Instruction*, std::size_t> elem_sizes_;
};

}  // namespace

ExecResult execute(const ir::IRProgram& program, const ExecOptions& options) {
  return Machine(program, options).run();
}

}  // namespace mvs::runtime
