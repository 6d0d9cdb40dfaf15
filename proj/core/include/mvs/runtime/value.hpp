#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace mvs::runtime {

using StorageId = std::uint64_t;
using EnvId = std::uint64_t;

struct Value;

struct StructValue {
  std::uint32_t decl = 0;  // index into the struct table
  std::vector<Value> fields;
};

struct ArrayValue {
  StorageId id = 0;
};

/// Closure record: body routine, environment record, and the names of the
/// synthesized routines that copy and destroy the environment.
struct FuncValue {
  std::uint32_t routine = 0;
  EnvId env = 0;
  std::string copy_routine;
  std::string destroy_routine;
};

struct Value {
  std::variant<std::int64_t, double, StructValue, ArrayValue, FuncValue> data;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(data);
  }
  template <typename T>
  T& as() {
    return std::get<T>(data);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(data);
  }
};

struct RuntimeStats {
  std::uint64_t deep_copies = 0;
  std::uint64_t retains = 0;
  std::uint64_t releases = 0;
  std::uint64_t moves = 0;
  std::uint64_t cow_copies = 0;
  std::uint64_t allocs = 0;
  std::uint64_t frees = 0;

  bool operator==(const RuntimeStats&) const = default;
};

/// Single-line JSON object with the seven counters.
std::string to_json(const RuntimeStats& stats);

}  // namespace mvs::runtime
