#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mvs/ast.hpp"
#include "mvs/typechecker.hpp"

namespace mvs::ir {

using SlotId = std::uint32_t;
using BlockId = std::uint32_t;
using RoutineId = std::uint32_t;

inline constexpr SlotId kNoSlot = std::numeric_limits<SlotId>::max();

enum class SlotKind {
  Temp,        // expression result, consumed exactly once
  Local,       // binding or captured copy, owned by the frame
  Param,       // by-value parameter, owned by the frame
  InoutParam,  // borrowed location in some caller's storage
  Env,         // borrowed closure environment record
  Location,    // resolved inout argument awaiting a call
};

std::string_view to_string(SlotKind kind);

/// Slots that own a value and therefore must be consumed exactly once.
bool is_owned(SlotKind kind);

struct SlotInfo {
  std::string name;
  Type type;
  SlotKind kind = SlotKind::Temp;
  bool is_mutable = false;
};

struct Step {
  enum class Kind { Field, Index };
  Kind kind = Kind::Field;
  std::uint32_t field = 0;    // Field
  SlotId index = kNoSlot;     // Index: consumed Int temp
  std::string field_name;
};

enum class Opcode {
  MakeInt,
  MakeFloat,
  MakeArray,
  MakeStruct,
  MakeClosure,
  Copy,
  Move,
  Destroy,
  LoadPath,
  StorePath,
  LoadEnv,
  ResolveLocation,
  OverlapCheck,
  Call,
  Binary,
  CondBr,
  Return,
  Yield,
};

std::string_view to_string(Opcode op);

/// Operand conventions:
///   MakeArray/MakeStruct/MakeClosure  consume all operands
///   Copy       dst <- read operands[0]
///   Move       dst <- consume operands[0]
///   Destroy    consume operands[0]
///   LoadPath   dst <- copy of operands[0].steps (index slots consumed)
///   StorePath  operands[0].steps <- consume operands[1]
///   LoadEnv    dst <- copy of env operands[0] entry `index`
///   ResolveLocation  dst <- location of operands[0].steps
///   OverlapCheck     read two location slots
///   Call       dst <- operands[0](operands[1..]); arguments consumed,
///              callee read
///   Binary     dst <- consume operands[0] op consume operands[1]
///   CondBr     dst <- then_block or else_block by consumed operands[0]
///   Return/Yield     consume operands[0]
struct Instruction {
  Opcode op = Opcode::MakeInt;
  SlotId dst = kNoSlot;
  std::vector<SlotId> operands;
  std::vector<Step> steps;
  std::int64_t int_value = 0;
  double float_value = 0;
  Type type;
  std::uint32_t index = 0;  // LoadEnv entry, MakeStruct declaration
  RoutineId routine = 0;    // MakeClosure body
  std::string copy_routine;
  std::string destroy_routine;
  BinaryOp binary_op = BinaryOp::Add;
  BlockId then_block = 0;
  BlockId else_block = 0;
  Span span;
};

struct Block {
  std::vector<Instruction> instructions;
};

struct Routine {
  RoutineId id = 0;
  std::string name;
  Type type;                  // Func type; invalid for the entry routine
  std::vector<SlotId> params;
  SlotId env = kNoSlot;
  std::vector<SlotInfo> slots;
  std::vector<Block> blocks;  // block 0 is the body

  const SlotInfo& slot(SlotId id) const { return slots.at(id); }
};

/// Synthesized copy/destroy behaviour of one type.
struct TypeMetadata {
  Type type;
  bool trivial = true;
  std::size_t size_bytes = 0;
  std::string copy_routine;
  std::string destroy_routine;
};

inline constexpr std::string_view kBitwiseCopy = "bitcopy";
inline constexpr std::string_view kNoopDestroy = "noop";

/// Recipe of a synthesized non-trivial copy or destroy routine; `parts` names
/// the routines applied to each element, field, or environment entry.
struct SynthesizedRoutine {
  enum class Kind {
    ArrayCopy,
    ArrayDestroy,
    StructCopy,
    StructDestroy,
    ClosureCopy,
    ClosureDestroy,
    EnvCopy,
    EnvDestroy,
  };
  std::string name;
  Kind kind = Kind::ArrayCopy;
  std::vector<std::string> parts;
};

struct IRProgram {
  std::vector<Routine> routines;
  std::map<std::string, TypeMetadata> metatypes;  // keyed by Type::str()
  std::map<std::string, SynthesizedRoutine> synthesized;
  RoutineId entry = 0;
  StructTable structs;

  const TypeMetadata& metatype(const Type& type) const;
};

/// Deterministic; identical inputs yield identical metadata. Registers the
/// routines it synthesizes when `routines` is non-null.
TypeMetadata synthesize_metatype(
    const Type& type, const StructTable& table,
    std::map<std::string, SynthesizedRoutine>* routines = nullptr);

/// Name of the environment-record metatype of closure routine `routine`.
std::string env_metatype_key(const Routine& routine);

IRProgram lower_program(const TypedProgram& program);

/// Turns Copy into Move where the source is never read again before its
/// destruction in the same block, deleting that Destroy.
IRProgram apply_move_optimization(IRProgram program);

/// Checks that every owned slot is defined once and consumed exactly once on
/// every path and that borrowed slots are never consumed. Returns one message
/// per violation.
std::vector<std::string> verify_linearity(const IRProgram& program);

std::string dump_ir(const IRProgram& program);

}  // namespace mvs::ir
