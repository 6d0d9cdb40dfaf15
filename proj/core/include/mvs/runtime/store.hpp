#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvs/runtime/value.hpp"
#include "mvs/typechecker.hpp"

namespace mvs::runtime {

/// Array block ⟨r, n, k, ē⟩. `n` is elements.size().
struct ArrayStorage {
  std::size_t r = 1;
  std::size_t elem_size = 0;
  std::size_t k = 0;
  std::vector<Value> elements;

  std::size_t n() const { return elements.size(); }
};

struct EnvRecord {
  std::vector<Value> entries;
};

/// Dynamic store of array blocks and closure environments. Identifiers are
/// never reused within one store.
class Store {
 public:
  explicit Store(bool cow) : cow_(cow) {}

  bool cow() const { return cow_; }
  RuntimeStats& stats() { return stats_; }
  const RuntimeStats& stats() const { return stats_; }

  StorageId allocate_array(std::vector<Value> elements, std::size_t elem_size);
  EnvId allocate_env(std::vector<Value> entries);

  ArrayStorage& array(StorageId id);
  const ArrayStorage& array(StorageId id) const;
  EnvRecord& env(EnvId id);
  const EnvRecord& env(EnvId id) const;

  Value copy_value(const Value& v);
  void destroy_value(Value& v);

  /// Makes the block held by `array` uniquely referenced, duplicating it when
  /// shared. Returns true when a copy was made.
  bool make_unique(ArrayValue& array);

  bool empty() const { return arrays_.empty() && envs_.empty(); }
  std::size_t live_arrays() const { return arrays_.size(); }
  std::size_t live_envs() const { return envs_.size(); }

  const std::unordered_map<StorageId, ArrayStorage>& arrays() const {
    return arrays_;
  }
  const std::unordered_map<EnvId, EnvRecord>& envs() const { return envs_; }

 private:
  StorageId duplicate(const ArrayStorage& block);

  bool cow_;
  RuntimeStats stats_;
  std::unordered_map<StorageId, ArrayStorage> arrays_;
  std::unordered_map<EnvId, EnvRecord> envs_;
  StorageId next_array_ = 1;
  EnvId next_env_ = 1;
};

/// `4`, `1.5`, `[1, 2]`, `Pair(4, 2)`, `<function>`.
std::string format_value(const Value& v, const Store& store,
                         const StructTable& structs);

/// Shortest round-trip text, with `.0` appended to integral values.
std::string format_float(double value);

}  // namespace mvs::runtime
