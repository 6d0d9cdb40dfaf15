#include "mvs/typechecker.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mvs {

StructTable::StructTable(std::vector<StructDecl> decls)
    : decls_(std::move(decls)) {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    index_.emplace(decls_[i].name, i);
  }
}

const StructDecl* StructTable::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &decls_[it->second];
}

const StructDecl& StructTable::at(std::string_view name) const {
  auto* decl = find(name);
  if (!decl) throw std::out_of_range("unknown struct " + std::string(name));
  return *decl;
}

std::size_t StructTable::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw std::out_of_range("unknown struct " + std::string(name));
  }
  return it->second;
}

namespace {

void require_well_formed(const Type& type, const StructTable& table,
                         Span span) {
  switch (type.kind()) {
    case Type::Kind::Int:
    case Type::Kind::Float:
      return;
    case Type::Kind::Struct:
      if (!table.find(type.name())) {
        throw TypeError(TypeErrorCode::UnboundName, span,
                        "unknown type '" + type.name() + "'");
      }
      return;
    case Type::Kind::Array:
      require_well_formed(type.element(), table, span);
      return;
    case Type::Kind::Func:
      for (const auto& p : type.params()) {
        require_well_formed(*p.type, table, span);
      }
      require_well_formed(type.codomain(), table, span);
      return;
  }
}

// Struct names a type stores inline (directly or through array elements).
const std::string* stored_struct(const Type& type) {
  if (type.is(Type::Kind::Struct)) return &type.name();
  if (type.is(Type::Kind::Array)) return stored_struct(type.element());
  return nullptr;
}

}  // namespace

StructTable check_struct_table(const std::vector<StructDecl>& structs) {
  StructTable table(structs);
  for (const auto& decl : structs) {
    for (const auto& field : decl.fields) {
      require_well_formed(field.type, table, field.span);
    }
  }

  enum class Color { White, Grey, Black };
  std::vector<Color> color(structs.size(), Color::White);
  std::vector<std::size_t> stack;

  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    color[i] = Color::Grey;
    stack.push_back(i);
    for (const auto& field : structs[i].fields) {
      const auto* dep = stored_struct(field.type);
      if (!dep) continue;
      auto j = table.index_of(*dep);
      if (color[j] == Color::Grey) {
        auto from = std::find(stack.begin(), stack.end(), j);
        std::string cycle = "[";
        for (auto it = from; it != stack.end(); ++it) {
          if (it != from) cycle += ", ";
          cycle += structs[*it].name;
        }
        cycle += "]";
        throw TypeError(TypeErrorCode::RecursiveStruct, structs[j].span,
                        "recursive structure cycle " + cycle);
      }
      if (color[j] == Color::White) visit(j);
    }
    stack.pop_back();
    color[i] = Color::Black;
  };
  for (std::size_t i = 0; i < structs.size(); ++i) {
    if (color[i] == Color::White) visit(i);
  }
  return table;
}

AccessPathShape shape_of(const PathExpr& path) {
  AccessPathShape shape{path.root, {}};
  for (const auto& acc : path.accessors) {
    PathStep step;
    if (acc.kind == Accessor::Kind::Field) {
      step.kind = PathStep::Kind::Field;
      step.field = acc.field;
    } else if (acc.index->is<IntLit>()) {
      step.kind = PathStep::Kind::IndexLiteral;
      step.literal = acc.index->as<IntLit>().value;
    } else {
      step.kind = PathStep::Kind::IndexDynamic;
    }
    shape.steps.push_back(std::move(step));
  }
  return shape;
}

std::string_view to_string(Overlap overlap) {
  switch (overlap) {
    case Overlap::Disjoint: return "Disjoint";
    case Overlap::Overlap: return "Overlap";
    case Overlap::MaybeOverlap: return "MaybeOverlap";
  }
  return "?";
}

Overlap paths_overlap(const AccessPathShape& a, const AccessPathShape& b) {
  if (a.root != b.root) return Overlap::Disjoint;
  bool dynamic = false;
  auto common = std::min(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    using K = PathStep::Kind;
    if (x.kind == K::Field || y.kind == K::Field) {
      if (x.kind != y.kind || x.field != y.field) return Overlap::Disjoint;
    } else if (x.kind == K::IndexLiteral && y.kind == K::IndexLiteral) {
      if (x.literal != y.literal) return Overlap::Disjoint;
    } else {
      dynamic = true;
    }
  }
  return dynamic ? Overlap::MaybeOverlap : Overlap::Overlap;
}

namespace {

struct VarInfo {
  Type type;
  Mutability mutability = Mutability::Let;
  std::size_t seq = 0;    // declaration order
  std::size_t depth = 0;  // function nesting level of the declaration
};

class Checker {
 public:
  explicit Checker(const StructTable& structs) : structs_(structs) {}

  void check_entry(Expr& entry) { check(entry, nullptr); }

 private:
  struct Scope {
    std::string name;
    VarInfo info;
  };

  struct FunctionContext {
    std::size_t depth;
    std::vector<std::pair<std::string, VarInfo>> captures;
  };

  [[noreturn]] static void error(TypeErrorCode code, Span span,
                                 std::string message) {
    throw TypeError(code, span, std::move(message));
  }

  static std::string quote(const Type& t) { return "'" + t.str() + "'"; }

  static void expect_type(const Type& expected, const Type& actual, Span span,
                          std::string_view what) {
    if (expected != actual) {
      error(TypeErrorCode::TypeMismatch, span,
            std::string(what) + ": expected " + quote(expected) + ", found " +
                quote(actual));
    }
  }

  std::size_t depth() const { return functions_.size(); }

  void push(const std::string& name, Type type, Mutability mutability) {
    scopes_.push_back(Scope{name, VarInfo{std::move(type), mutability,
                                          next_seq_++, depth()}});
  }

  VarInfo lookup(const std::string& name, Span span) {
    if (name == kWildcard) {
      error(TypeErrorCode::WildcardRead, span, "'_' cannot be read");
    }
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->name != name) continue;
      const VarInfo& info = it->info;
      for (auto& fn : functions_) {
        if (fn.depth <= info.depth) continue;
        auto& caps = fn.captures;
        auto found = std::find_if(caps.begin(), caps.end(), [&](auto& c) {
          return c.first == name;
        });
        if (found == caps.end()) caps.emplace_back(name, info);
      }
      return info;
    }
    error(TypeErrorCode::UnboundName, span, "unbound name '" + name + "'");
  }

  // Resolves a path's type and whether it denotes a mutable location.
  Type check_path(PathExpr& path, bool& is_mutable) {
    VarInfo root = lookup(path.root, path.root_span);
    is_mutable = root.mutability == Mutability::Var;
    Type current = root.type;
    for (auto& acc : path.accessors) {
      if (acc.kind == Accessor::Kind::Field) {
        if (!current.is(Type::Kind::Struct)) {
          error(TypeErrorCode::TypeMismatch, acc.span,
                "type " + quote(current) + " has no field '" + acc.field +
                    "'");
        }
        const auto& decl = structs_.at(current.name());
        int index = decl.field_index(acc.field);
        if (index < 0) {
          error(TypeErrorCode::UnboundName, acc.span,
                "structure '" + decl.name + "' has no field '" + acc.field +
                    "'");
        }
        acc.field_index = index;
        const auto& field = decl.fields[static_cast<std::size_t>(index)];
        if (field.mutability == Mutability::Let) is_mutable = false;
        current = field.type;
      } else {
        if (!current.is(Type::Kind::Array)) {
          error(TypeErrorCode::TypeMismatch, acc.span,
                "type " + quote(current) + " cannot be subscripted");
        }
        auto index_type = check(*acc.index, nullptr);
        expect_type(Type::integer(), index_type, acc.index->span,
                    "subscript index");
        current = current.element();
      }
    }
    return current;
  }

  Type check_mutable_path(PathExpr& path, Span span) {
    bool is_mutable = false;
    auto type = check_path(path, is_mutable);
    if (!is_mutable) {
      error(TypeErrorCode::ImmutableTarget, span,
            "cannot mutate immutable location '" + path.root +
                (path.accessors.empty() ? "'" : "...'"));
    }
    return type;
  }

  Type check(Expr& e, const Type* expected) {
    e.type = std::visit([&](auto& n) { return check_node(n, e, expected); },
                        e.node);
    return e.type;
  }

  Type check_node(Binding& b, Expr&, const Type* expected) {
    if (b.annotation) require_well_formed(*b.annotation, structs_, b.initializer->span);
    auto init = check(*b.initializer, b.annotation ? &*b.annotation : nullptr);
    if (b.annotation) {
      expect_type(*b.annotation, init, b.initializer->span, "initializer");
    }
    if (b.name == kWildcard) return check(*b.body, expected);
    push(b.name, init, b.mutability);
    auto result = check(*b.body, expected);
    scopes_.pop_back();
    return result;
  }

  Type check_node(Assign& a, Expr&, const Type* expected) {
    if (a.target.is_wildcard()) {
      if (!a.target.accessors.empty()) {
        error(TypeErrorCode::WildcardRead, a.target.root_span,
              "'_' cannot be read");
      }
      check(*a.value, nullptr);
    } else {
      Span span{a.target.root_span.start,
                a.target.accessors.empty()
                    ? a.target.root_span.end
                    : a.target.accessors.back().span.end};
      auto target = check_mutable_path(a.target, span);
      auto value = check(*a.value, &target);
      expect_type(target, value, a.value->span, "assigned value");
    }
    return check(*a.body, expected);
  }

  Type check_node(IntLit&, Expr&, const Type*) { return Type::integer(); }
  Type check_node(FloatLit&, Expr&, const Type*) { return Type::floating(); }

  Type check_node(ArrayLit& lit, Expr& e, const Type* expected) {
    const Type* expected_element =
        expected && expected->is(Type::Kind::Array) ? &expected->element()
                                                    : nullptr;
    if (lit.elements.empty()) {
      if (!expected_element) {
        error(TypeErrorCode::TypeMismatch, e.span,
              "cannot infer the element type of an empty array");
      }
      return *expected;
    }
    auto element = check(*lit.elements.front(), expected_element);
    for (std::size_t i = 1; i < lit.elements.size(); ++i) {
      auto t = check(*lit.elements[i], &element);
      expect_type(element, t, lit.elements[i]->span, "array element");
    }
    return Type::array(element);
  }

  Type check_node(StructInit& init, Expr& e, const Type*) {
    const auto& decl = structs_.at(init.name);
    if (init.arguments.size() != decl.fields.size()) {
      error(TypeErrorCode::ArityMismatch, e.span,
            "'" + decl.name + "' has " + std::to_string(decl.fields.size()) +
                " fields, " + std::to_string(init.arguments.size()) +
                " given");
    }
    for (std::size_t i = 0; i < decl.fields.size(); ++i) {
      auto t = check(*init.arguments[i], &decl.fields[i].type);
      expect_type(decl.fields[i].type, t, init.arguments[i]->span,
                  "field '" + decl.fields[i].name + "'");
    }
    return Type::structure(decl.name);
  }

  Type check_node(FuncLit& lit, Expr& e, const Type*) {
    std::vector<Type::Param> params;
    for (const auto& p : lit.params) {
      require_well_formed(p.type, structs_, p.span);
      params.push_back(Type::param(p.passing, p.type));
    }
    require_well_formed(lit.codomain, structs_, e.span);

    functions_.push_back(FunctionContext{depth() + 1, {}});
    auto scope_mark = scopes_.size();
    for (const auto& p : lit.params) {
      push(p.name, p.type,
           p.passing == Passing::Inout ? Mutability::Var : Mutability::Let);
    }
    auto body = check(*lit.body, &lit.codomain);
    expect_type(lit.codomain, body, lit.body->span, "function body");
    scopes_.resize(scope_mark);

    auto captures = std::move(functions_.back().captures);
    functions_.pop_back();
    std::sort(captures.begin(), captures.end(), [](auto& a, auto& b) {
      return a.second.seq < b.second.seq;
    });
    lit.captures.clear();
    for (auto& [name, info] : captures) {
      lit.captures.push_back(Capture{name, info.type, info.mutability});
    }
    return Type::function(std::move(params), lit.codomain);
  }

  Type check_node(Call& call, Expr& e, const Type*) {
    auto callee = check(*call.callee, nullptr);
    if (!callee.is(Type::Kind::Func)) {
      error(TypeErrorCode::TypeMismatch, call.callee->span,
            "type " + quote(callee) + " is not callable");
    }
    const auto& params = callee.params();
    if (params.size() != call.arguments.size()) {
      error(TypeErrorCode::ArityMismatch, e.span,
            "expected " + std::to_string(params.size()) + " arguments, " +
                std::to_string(call.arguments.size()) + " given");
    }
    std::vector<std::size_t> inout_args;
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto& arg = call.arguments[i];
      const Type& param_type = *params[i].type;
      bool wants_inout = params[i].passing == Passing::Inout;
      if (wants_inout != arg.inout) {
        error(TypeErrorCode::InvalidInoutArgument, arg.span,
              wants_inout ? "parameter is inout; pass '&path'"
                          : "parameter is not inout");
      }
      if (arg.inout) {
        auto t = check_mutable_path(arg.path, arg.span);
        expect_type(param_type, t, arg.span, "inout argument");
        inout_args.push_back(i);
      } else {
        auto t = check(*arg.value, &param_type);
        expect_type(param_type, t, arg.span, "argument");
      }
    }

    call.maybe_overlaps.clear();
    for (std::size_t x = 0; x < inout_args.size(); ++x) {
      for (std::size_t y = x + 1; y < inout_args.size(); ++y) {
        auto& a = call.arguments[inout_args[x]];
        auto& b = call.arguments[inout_args[y]];
        switch (paths_overlap(shape_of(a.path), shape_of(b.path))) {
          case Overlap::Overlap:
            error(TypeErrorCode::OverlappingInout, b.span,
                  "overlapping inout arguments");
          case Overlap::MaybeOverlap:
            call.maybe_overlaps.emplace_back(inout_args[x], inout_args[y]);
            break;
          case Overlap::Disjoint:
            break;
        }
      }
    }
    return callee.codomain();
  }

  Type check_node(PathExpr& path, Expr&, const Type*) {
    bool is_mutable = false;
    return check_path(path, is_mutable);
  }

  Type check_node(Binary& b, Expr& e, const Type*) {
    auto lhs = check(*b.lhs, nullptr);
    auto rhs = check(*b.rhs, &lhs);
    bool numeric = lhs.is(Type::Kind::Int) || lhs.is(Type::Kind::Float);
    if (!numeric) {
      error(TypeErrorCode::TypeMismatch, b.lhs->span,
            "operator '" + std::string(spelling(b.op)) +
                "' is not defined on " + quote(lhs));
    }
    expect_type(lhs, rhs, b.rhs->span, "right operand");
    if (b.op == BinaryOp::Rem && !lhs.is(Type::Kind::Int)) {
      error(TypeErrorCode::TypeMismatch, e.span,
            "operator '%' requires 'Int' operands");
    }
    return is_comparison(b.op) ? Type::integer() : lhs;
  }

  Type check_node(Cond& c, Expr&, const Type* expected) {
    auto cond = check(*c.condition, nullptr);
    expect_type(Type::integer(), cond, c.condition->span, "condition");
    auto then_type = check(*c.then_branch, expected);
    auto else_type = check(*c.else_branch, &then_type);
    expect_type(then_type, else_type, c.else_branch->span, "else branch");
    return then_type;
  }

  const StructTable& structs_;
  std::vector<Scope> scopes_;
  std::vector<FunctionContext> functions_;
  std::size_t next_seq_ = 0;
};

}  // namespace

TypedProgram check_program(Program program) {
  auto structs = check_struct_table(program.structs);
  Checker checker(structs);
  checker.check_entry(*program.entry);
  return TypedProgram{std::move(program), std::move(structs)};
}

}  // namespace mvs
