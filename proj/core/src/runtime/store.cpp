#include "mvs/runtime/store.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mvs::runtime {

std::string to_json(const RuntimeStats& s) {
  return "{\"deep_copies\":" + std::to_string(s.deep_copies) +
         ",\"retains\":" + std::to_string(s.retains) +
         ",\"releases\":" + std::to_string(s.releases) +
         ",\"moves\":" + std::to_string(s.moves) +
         ",\"cow_copies\":" + std::to_string(s.cow_copies) +
         ",\"allocs\":" + std::to_string(s.allocs) +
         ",\"frees\":" + std::to_string(s.frees) + "}";
}

StorageId Store::allocate_array(std::vector<Value> elements,
                                std::size_t elem_size) {
  auto id = next_array_++;
  ArrayStorage block;
  block.elem_size = elem_size;
  block.k = elements.size() * elem_size;
  block.elements = std::move(elements);
  arrays_.emplace(id, std::move(block));
  ++stats_.allocs;
  return id;
}

EnvId Store::allocate_env(std::vector<Value> entries) {
  auto id = next_env_++;
  envs_.emplace(id, EnvRecord{std::move(entries)});
  ++stats_.allocs;
  return id;
}

ArrayStorage& Store::array(StorageId id) {
  auto it = arrays_.find(id);
  if (it == arrays_.end()) throw std::logic_error("dangling storage id");
  return it->second;
}

const ArrayStorage& Store::array(StorageId id) const {
  auto it = arrays_.find(id);
  if (it == arrays_.end()) throw std::logic_error("dangling storage id");
  return it->second;
}

EnvRecord& Store::env(EnvId id) {
  auto it = envs_.find(id);
  if (it == envs_.end()) throw std::logic_error("dangling environment id");
  return it->second;
}

const EnvRecord& Store::env(EnvId id) const {
  auto it = envs_.find(id);
  if (it == envs_.end()) throw std::logic_error("dangling environment id");
  return it->second;
}

StorageId Store::duplicate(const ArrayStorage& block) {
  std::vector<Value> elements;
  elements.reserve(block.elements.size());
  for (const auto& e : block.elements) elements.push_back(copy_value(e));
  return allocate_array(std::move(elements), block.elem_size);
}

Value Store::copy_value(const Value& v) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t> ||
                      std::is_same_v<T, double>) {
          return Value{x};
        } else if constexpr (std::is_same_v<T, StructValue>) {
          StructValue out{x.decl, {}};
          out.fields.reserve(x.fields.size());
          for (const auto& f : x.fields) out.fields.push_back(copy_value(f));
          return Value{std::move(out)};
        } else if constexpr (std::is_same_v<T, ArrayValue>) {
          if (cow_) {
            ++array(x.id).r;
            ++stats_.retains;
            return Value{x};
          }
          // References into an unordered_map survive rehashing.
          ++stats_.deep_copies;
          auto id = duplicate(array(x.id));
          return Value{ArrayValue{id}};
        } else {
          std::vector<Value> entries;
          for (const auto& e : env(x.env).entries) {
            entries.push_back(copy_value(e));
          }
          FuncValue out = x;
          out.env = allocate_env(std::move(entries));
          return Value{std::move(out)};
        }
      },
      v.data);
}

void Store::destroy_value(Value& v) {
  if (auto* s = std::get_if<StructValue>(&v.data)) {
    for (auto& f : s->fields) destroy_value(f);
  } else if (auto* a = std::get_if<ArrayValue>(&v.data)) {
    auto it = arrays_.find(a->id);
    assert(it != arrays_.end() && it->second.r > 0);
    if (it->second.r > 1) {
      --it->second.r;
      ++stats_.releases;
    } else {
      auto elements = std::move(it->second.elements);
      arrays_.erase(it);
      ++stats_.frees;
      for (auto& e : elements) destroy_value(e);
    }
  } else if (auto* f = std::get_if<FuncValue>(&v.data)) {
    auto it = envs_.find(f->env);
    assert(it != envs_.end());
    auto entries = std::move(it->second.entries);
    envs_.erase(it);
    ++stats_.frees;
    for (auto& e : entries) destroy_value(e);
  }
  v.data = std::int64_t{0};
}

bool Store::make_unique(ArrayValue& value) {
  auto& block = array(value.id);
  if (block.r <= 1) return false;
  --block.r;
  ++stats_.releases;
  ++stats_.cow_copies;
  value.id = duplicate(block);
  return true;
}

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

namespace {

void format_into(std::string& out, const Value& v, const Store& store,
                 const StructTable& structs) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          out += format_float(x);
        } else if constexpr (std::is_same_v<T, StructValue>) {
          out += structs.decls().at(x.decl).name;
          out += '(';
          for (std::size_t i = 0; i < x.fields.size(); ++i) {
            if (i) out += ", ";
            format_into(out, x.fields[i], store, structs);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, ArrayValue>) {
          out += '[';
          const auto& elements = store.array(x.id).elements;
          for (std::size_t i = 0; i < elements.size(); ++i) {
            if (i) out += ", ";
            format_into(out, elements[i], store, structs);
          }
          out += ']';
        } else {
          out += "<function>";
        }
      },
      v.data);
}

}  // namespace

std::string format_value(const Value& v, const Store& store,
                         const StructTable& structs) {
  std::string out;
  format_into(out, v, store, structs);
  return out;
}

}  // namespace mvs::runtime
