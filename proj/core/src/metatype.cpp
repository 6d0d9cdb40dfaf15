#include <stdexcept>

#include "mvs/ir.hpp"

namespace mvs::ir {

namespace {

constexpr std::size_t kScalarSize = 8;
constexpr std::size_t kHandleSize = 8;
// A closure record holds four handle-sized cells: body, environment, copy and
// destroy routines.
constexpr std::size_t kClosureSize = 4 * kHandleSize;

void record(std::map<std::string, SynthesizedRoutine>* routines,
            SynthesizedRoutine routine) {
  if (routines) routines->emplace(routine.name, std::move(routine));
}

}  // namespace

TypeMetadata synthesize_metatype(
    const Type& type, const StructTable& table,
    std::map<std::string, SynthesizedRoutine>* routines) {
  TypeMetadata meta;
  meta.type = type;
  auto key = type.str();
  using Kind = SynthesizedRoutine::Kind;

  switch (type.kind()) {
    case Type::Kind::Int:
    case Type::Kind::Float:
      meta.trivial = true;
      meta.size_bytes = kScalarSize;
      break;

    case Type::Kind::Struct: {
      const auto& decl = table.at(type.name());
      std::vector<std::string> copies;
      std::vector<std::string> destroys;
      for (const auto& field : decl.fields) {
        auto sub = synthesize_metatype(field.type, table, routines);
        meta.trivial = meta.trivial && sub.trivial;
        meta.size_bytes += sub.size_bytes;
        copies.push_back(sub.copy_routine);
        destroys.push_back(sub.destroy_routine);
      }
      if (!meta.trivial) {
        meta.copy_routine = "copy<" + key + ">";
        meta.destroy_routine = "destroy<" + key + ">";
        record(routines, {meta.copy_routine, Kind::StructCopy, copies});
        record(routines, {meta.destroy_routine, Kind::StructDestroy, destroys});
      }
      break;
    }

    case Type::Kind::Array: {
      auto element = synthesize_metatype(type.element(), table, routines);
      meta.trivial = false;
      meta.size_bytes = kHandleSize;
      meta.copy_routine = "copy<" + key + ">";
      meta.destroy_routine = "destroy<" + key + ">";
      record(routines,
             {meta.copy_routine, Kind::ArrayCopy, {element.copy_routine}});
      record(routines, {meta.destroy_routine, Kind::ArrayDestroy,
                        {element.destroy_routine}});
      break;
    }

    case Type::Kind::Func:
      meta.trivial = false;
      meta.size_bytes = kClosureSize;
      meta.copy_routine = "copy<" + key + ">";
      meta.destroy_routine = "destroy<" + key + ">";
      record(routines, {meta.copy_routine, Kind::ClosureCopy, {}});
      record(routines, {meta.destroy_routine, Kind::ClosureDestroy, {}});
      break;
  }

  if (meta.trivial) {
    meta.copy_routine = std::string(kBitwiseCopy);
    meta.destroy_routine = std::string(kNoopDestroy);
  }
  return meta;
}

std::string env_metatype_key(const Routine& routine) {
  return "env<" + routine.name + ">";
}

const TypeMetadata& IRProgram::metatype(const Type& type) const {
  auto it = metatypes.find(type.str());
  if (it == metatypes.end()) {
    throw std::out_of_range("no metatype for " + type.str());
  }
  return it->second;
}

}  // namespace mvs::ir
