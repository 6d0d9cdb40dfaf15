#include "mvs/ast.hpp"

namespace mvs {

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Rem: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

int StructDecl::field_index(std::string_view field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

bool equal(const PathExpr& a, const PathExpr& b) {
  if (a.root != b.root || a.accessors.size() != b.accessors.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.accessors.size(); ++i) {
    const auto& x = a.accessors[i];
    const auto& y = b.accessors[i];
    if (x.kind != y.kind) return false;
    if (x.kind == Accessor::Kind::Field ? x.field != y.field
                                        : !equal(x.index, y.index)) {
      return false;
    }
  }
  return true;
}

struct EqualVisitor {
  const Expr& other;

  template <typename T>
  const T& peer() const {
    return other.as<T>();
  }

  bool operator()(const Binding& a) const {
    const auto& b = peer<Binding>();
    return a.mutability == b.mutability && a.name == b.name &&
           a.annotation.has_value() == b.annotation.has_value() &&
           (!a.annotation || *a.annotation == *b.annotation) &&
           equal(a.initializer, b.initializer) && equal(a.body, b.body);
  }
  bool operator()(const Assign& a) const {
    const auto& b = peer<Assign>();
    return equal(a.target, b.target) && equal(a.value, b.value) &&
           equal(a.body, b.body);
  }
  bool operator()(const IntLit& a) const {
    return a.value == peer<IntLit>().value;
  }
  bool operator()(const FloatLit& a) const {
    return a.value == peer<FloatLit>().value;
  }
  bool operator()(const ArrayLit& a) const {
    return equal(a.elements, peer<ArrayLit>().elements);
  }
  bool operator()(const StructInit& a) const {
    const auto& b = peer<StructInit>();
    return a.name == b.name && equal(a.arguments, b.arguments);
  }
  bool operator()(const FuncLit& a) const {
    const auto& b = peer<FuncLit>();
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      if (a.params[i].name != b.params[i].name ||
          a.params[i].passing != b.params[i].passing ||
          a.params[i].type != b.params[i].type) {
        return false;
      }
    }
    return a.codomain == b.codomain && equal(a.body, b.body);
  }
  bool operator()(const Call& a) const {
    const auto& b = peer<Call>();
    if (!equal(a.callee, b.callee) ||
        a.arguments.size() != b.arguments.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.arguments.size(); ++i) {
      const auto& x = a.arguments[i];
      const auto& y = b.arguments[i];
      if (x.inout != y.inout) return false;
      if (x.inout ? !equal(x.path, y.path) : !equal(x.value, y.value)) {
        return false;
      }
    }
    return true;
  }
  bool operator()(const PathExpr& a) const {
    return equal(a, peer<PathExpr>());
  }
  bool operator()(const Binary& a) const {
    const auto& b = peer<Binary>();
    return a.op == b.op && equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
  }
  bool operator()(const Cond& a) const {
    const auto& b = peer<Cond>();
    return equal(a.condition, b.condition) &&
           equal(a.then_branch, b.then_branch) &&
           equal(a.else_branch, b.else_branch);
  }
};

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(EqualVisitor{b}, a.node);
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.structs.size() != b.structs.size()) return false;
  for (std::size_t i = 0; i < a.structs.size(); ++i) {
    const auto& x = a.structs[i];
    const auto& y = b.structs[i];
    if (x.name != y.name || x.fields.size() != y.fields.size()) return false;
    for (std::size_t j = 0; j < x.fields.size(); ++j) {
      if (x.fields[j].name != y.fields[j].name ||
          x.fields[j].mutability != y.fields[j].mutability ||
          x.fields[j].type != y.fields[j].type) {
        return false;
      }
    }
  }
  return equal(a.entry, b.entry);
}

}  // namespace mvs
