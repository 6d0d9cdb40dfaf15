#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mvs/diagnostics.hpp"
#include "mvs/type.hpp"

namespace mvs {

enum class Mutability { Let, Var };

inline constexpr std::string_view kWildcard = "_";

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Accessor {
  enum class Kind { Field, Index };
  Kind kind = Kind::Field;
  std::string field;  // Field
  ExprPtr index;      // Index
  Span span;

  // Set by the type checker for Field accessors.
  int field_index = -1;
};

/// A variable root followed by field and subscript steps.
struct PathExpr {
  std::string root;
  Span root_span;
  std::vector<Accessor> accessors;

  bool is_wildcard() const { return root == kWildcard; }
};

struct IntLit {
  std::int64_t value = 0;
};

struct FloatLit {
  double value = 0;
};

struct ArrayLit {
  std::vector<ExprPtr> elements;
};

struct StructInit {
  std::string name;
  std::vector<ExprPtr> arguments;
};

struct FuncParam {
  std::string name;
  Passing passing = Passing::ByValue;
  Type type;
  Span span;
};

struct Capture {
  std::string name;
  Type type;
  Mutability mutability = Mutability::Let;
};

struct FuncLit {
  std::vector<FuncParam> params;
  Type codomain;
  ExprPtr body;

  // Free identifiers resolved in the declaration environment, in the order
  // their bindings were declared. Filled by the type checker.
  std::vector<Capture> captures;
};

struct Arg {
  bool inout = false;
  ExprPtr value;  // plain argument
  PathExpr path;  // `&path`
  Span span;
};

struct Call {
  ExprPtr callee;
  std::vector<Arg> arguments;

  // Pairs of argument indices whose inout paths may overlap depending on
  // runtime index values. Filled by the type checker.
  std::vector<std::pair<std::size_t, std::size_t>> maybe_overlaps;
};

enum class BinaryOp { Add, Sub, Mul, Div, Rem, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view spelling(BinaryOp op);
bool is_comparison(BinaryOp op);

struct Binary {
  BinaryOp op = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Cond {
  ExprPtr condition;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

struct Binding {
  Mutability mutability = Mutability::Let;
  std::string name;  // may be the wildcard
  std::optional<Type> annotation;
  ExprPtr initializer;
  ExprPtr body;
};

struct Assign {
  PathExpr target;  // root is the wildcard for `_ = e in ...`
  ExprPtr value;
  ExprPtr body;
};

struct Expr {
  using Node = std::variant<Binding, Assign, IntLit, FloatLit, ArrayLit,
                            StructInit, FuncLit, Call, PathExpr, Binary, Cond>;

  Node node;
  Span span;
  Type type;  // filled by the type checker

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
  template <typename T>
  T& as() {
    return std::get<T>(node);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(node);
  }
};

template <typename T>
ExprPtr make_expr(T node, Span span) {
  return std::make_unique<Expr>(Expr{Expr::Node(std::move(node)), span, {}});
}

struct FieldDecl {
  Mutability mutability = Mutability::Var;
  std::string name;
  Type type;
  Span span;
};

struct StructDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  Span span;

  int field_index(std::string_view field) const;
};

struct Program {
  std::vector<StructDecl> structs;
  ExprPtr entry;
};

/// Structural equality ignoring spans and checker annotations.
bool structurally_equal(const Program& a, const Program& b);
bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace mvs
