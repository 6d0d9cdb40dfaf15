#include "mvs/type.hpp"

#include <cassert>

namespace mvs {

struct Type::Node {
  Kind kind;
  std::string name;
  std::vector<Type> children;  // element, or codomain for Func
  std::vector<Param> params;
};

Type Type::Param::type_of() const { return type ? *type : Type(); }

Type Type::integer() {
  static const Type t(std::make_shared<Node>(Node{Kind::Int, "Int", {}, {}}));
  return t;
}

Type Type::floating() {
  static const Type t(
      std::make_shared<Node>(Node{Kind::Float, "Float", {}, {}}));
  return t;
}

Type Type::array(Type element) {
  return Type(std::make_shared<Node>(
      Node{Kind::Array, {}, {std::move(element)}, {}}));
}

Type Type::structure(std::string name) {
  return Type(
      std::make_shared<Node>(Node{Kind::Struct, std::move(name), {}, {}}));
}

Type Type::function(std::vector<Param> params, Type codomain) {
  return Type(std::make_shared<Node>(
      Node{Kind::Func, {}, {std::move(codomain)}, std::move(params)}));
}

Type::Param Type::param(Passing passing, Type type) {
  return Param{passing, std::make_shared<const Type>(std::move(type))};
}

Type::Kind Type::kind() const {
  assert(node_);
  return node_->kind;
}

const Type& Type::element() const {
  assert(is(Kind::Array));
  return node_->children[0];
}

const std::string& Type::name() const {
  assert(node_);
  return node_->name;
}

const std::vector<Type::Param>& Type::params() const {
  assert(is(Kind::Func));
  return node_->params;
}

const Type& Type::codomain() const {
  assert(is(Kind::Func));
  return node_->children[0];
}

std::string Type::str() const {
  if (!node_) return "<unknown>";
  switch (node_->kind) {
    case Kind::Int:
    case Kind::Float:
    case Kind::Struct:
      return node_->name;
    case Kind::Array:
      return "[" + element().str() + "]";
    case Kind::Func: {
      std::string out = "(";
      for (std::size_t i = 0; i < node_->params.size(); ++i) {
        if (i) out += ", ";
        if (node_->params[i].passing == Passing::Inout) out += "inout ";
        out += node_->params[i].type->str();
      }
      out += ") -> " + codomain().str();
      return out;
    }
  }
  return "<unknown>";
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Type::Kind::Int:
    case Type::Kind::Float:
      return true;
    case Type::Kind::Struct:
      return x.name == y.name;
    case Type::Kind::Array:
      return x.children[0] == y.children[0];
    case Type::Kind::Func:
      if (x.params.size() != y.params.size()) return false;
      for (std::size_t i = 0; i < x.params.size(); ++i) {
        if (x.params[i].passing != y.params[i].passing) return false;
        if (*x.params[i].type != *y.params[i].type) return false;
      }
      return x.children[0] == y.children[0];
  }
  return false;
}

}  // namespace mvs
