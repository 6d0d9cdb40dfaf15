#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mvs {

enum class Passing { ByValue, Inout };

/// Immutable, structurally compared static type. Cheap to copy; the
/// default-constructed value is the "not yet known" placeholder.
class Type {
 public:
  enum class Kind { Int, Float, Array, Struct, Func };

  struct Param {
    Passing passing = Passing::ByValue;
    Type type_of() const;

    // Stored behind a pointer so Param stays complete while Type is not.
    std::shared_ptr<const Type> type;
  };

  Type() = default;

  static Type integer();
  static Type floating();
  static Type array(Type element);
  static Type structure(std::string name);
  static Type function(std::vector<Param> params, Type codomain);
  static Param param(Passing passing, Type type);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  bool is(Kind k) const { return valid() && kind() == k; }

  const Type& element() const;
  const std::string& name() const;
  const std::vector<Param>& params() const;
  const Type& codomain() const;

  /// Canonical source spelling, e.g. `(inout Int, [Pair]) -> U`.
  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace mvs
