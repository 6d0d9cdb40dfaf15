#include "mvs/oracle/interpreter.hpp"

#include <cassert>
#include <optional>

#include "mvs/runtime/arith.hpp"
#include "mvs/runtime/store.hpp"

namespace mvs::oracle {

namespace {

struct Tree;

struct TreeStruct {
  std::size_t decl = 0;
  std::vector<Tree> fields;
};

struct TreeArray {
  std::vector<Tree> elements;
};

struct TreeFunc {
  const FuncLit* lit = nullptr;
  std::vector<Tree> env;
};

struct Tree {
  std::variant<std::int64_t, double, TreeStruct, TreeArray, TreeFunc> data;
};

// One concrete step: a field position or an evaluated index.
struct ConcreteStep {
  bool is_index = false;
  std::int64_t value = 0;
};

struct ConcretePath {
  std::string root;
  std::vector<ConcreteStep> steps;
};

void format(std::string& out, const Tree& t, const StructTable& structs) {
  if (auto* i = std::get_if<std::int64_t>(&t.data)) {
    out += std::to_string(*i);
  } else if (auto* d = std::get_if<double>(&t.data)) {
    out += runtime::format_float(*d);
  } else if (auto* s = std::get_if<TreeStruct>(&t.data)) {
    out += structs.decls()[s->decl].name + "(";
    for (std::size_t i = 0; i < s->fields.size(); ++i) {
      if (i) out += ", ";
      format(out, s->fields[i], structs);
    }
    out += ")";
  } else if (auto* a = std::get_if<TreeArray>(&t.data)) {
    out += "[";
    for (std::size_t i = 0; i < a->elements.size(); ++i) {
      if (i) out += ", ";
      format(out, a->elements[i], structs);
    }
    out += "]";
  } else {
    out += "<function>";
  }
}

class Interpreter {
 public:
  Interpreter(const TypedProgram& program, const OracleOptions& options)
      : program_(program), options_(options) {}

  std::string run() {
    auto result = eval(*program_.program.entry);
    std::string out;
    format(out, result, program_.structs);
    return out;
  }

 private:
  struct Variable {
    std::string name;
    Tree value;
  };

  Tree& variable(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) return it->value;
    }
    assert(false && "name resolved by the type checker");
    return scope_.back().value;
  }

  std::int64_t eval_int(const Expr& e) {
    return std::get<std::int64_t>(eval(e).data);
  }

  [[noreturn]] void out_of_bounds(std::int64_t index, std::size_t n,
                                  Span span) {
    throw RuntimeTrap(TrapKind::IndexOutOfBounds, span,
                      "index " + std::to_string(index) +
                          " out of bounds for array of length " +
                          std::to_string(n));
  }

  // Index expressions of a path, evaluated left to right before the path is
  // navigated.
  std::vector<ConcreteStep> eval_steps(const PathExpr& path) {
    std::vector<ConcreteStep> steps;
    for (const auto& acc : path.accessors) {
      if (acc.kind == Accessor::Kind::Field) {
        steps.push_back({false, acc.field_index});
      } else {
        steps.push_back({true, eval_int(*acc.index)});
      }
    }
    return steps;
  }

  Tree& navigate(const ConcretePath& path, Span span) {
    Tree* t = &variable(path.root);
    for (const auto& step : path.steps) {
      if (!step.is_index) {
        t = &std::get<TreeStruct>(t->data).fields[step.value];
        continue;
      }
      auto& elements = std::get<TreeArray>(t->data).elements;
      if (step.value < 0 ||
          static_cast<std::size_t>(step.value) >= elements.size()) {
        out_of_bounds(step.value, elements.size(), span);
      }
      t = &elements[step.value];
    }
    return *t;
  }

  static bool prefix_related(const ConcretePath& a, const ConcretePath& b) {
    auto n = std::min(a.steps.size(), b.steps.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.steps[i].is_index != b.steps[i].is_index ||
          a.steps[i].value != b.steps[i].value) {
        return false;
      }
    }
    return true;
  }

  Tree eval(const Expr& e) {
    return std::visit([&](const auto& n) { return eval_node(n, e); }, e.node);
  }

  Tree eval_node(const IntLit& lit, const Expr&) { return {lit.value}; }
  Tree eval_node(const FloatLit& lit, const Expr&) { return {lit.value}; }

  Tree eval_node(const ArrayLit& lit, const Expr&) {
    TreeArray out;
    for (const auto& el : lit.elements) out.elements.push_back(eval(*el));
    return {std::move(out)};
  }

  Tree eval_node(const StructInit& init, const Expr&) {
    TreeStruct out{program_.structs.index_of(init.name), {}};
    for (const auto& arg : init.arguments) out.fields.push_back(eval(*arg));
    return {std::move(out)};
  }

  Tree eval_node(const FuncLit& lit, const Expr&) {
    TreeFunc out{&lit, {}};
    for (const auto& cap : lit.captures) out.env.push_back(variable(cap.name));
    return {std::move(out)};
  }

  Tree eval_node(const PathExpr& path, const Expr& e) {
    ConcretePath concrete{path.root, eval_steps(path)};
    return navigate(concrete, e.span);
  }

  Tree eval_node(const Binary& b, const Expr& e) {
    auto lhs = eval(*b.lhs);
    auto rhs = eval(*b.rhs);
    if (auto* i = std::get_if<std::int64_t>(&lhs.data)) {
      return {runtime::apply_int(b.op, *i, std::get<std::int64_t>(rhs.data),
                                 e.span)};
    }
    auto r = runtime::apply_float(b.op, std::get<double>(lhs.data),
                                  std::get<double>(rhs.data));
    if (auto* i = std::get_if<std::int64_t>(&r)) return {*i};
    return {std::get<double>(r)};
  }

  Tree eval_node(const Cond& c, const Expr&) {
    return eval_int(*c.condition) != 0 ? eval(*c.then_branch)
                                       : eval(*c.else_branch);
  }

  Tree eval_node(const Binding& b, const Expr&) {
    auto value = eval(*b.initializer);
    if (b.name == kWildcard) return eval(*b.body);
    scope_.push_back({b.name, std::move(value)});
    auto result = eval(*b.body);
    scope_.pop_back();
    return result;
  }

  Tree eval_node(const Assign& a, const Expr& e) {
    if (a.target.is_wildcard()) {
      eval(*a.value);
      return eval(*a.body);
    }
    ConcretePath target{a.target.root, eval_steps(a.target)};
    auto value = eval(*a.value);
    navigate(target, e.span) = std::move(value);
    return eval(*a.body);
  }

  Tree eval_node(const Call& call, const Expr& e) {
    const bool bare_callee = call.callee->is<PathExpr>() &&
                             call.callee->as<PathExpr>().accessors.empty();
    std::optional<Tree> callee;
    if (!bare_callee) callee = eval(*call.callee);

    const auto n = call.arguments.size();
    std::vector<Tree> args(n);
    std::vector<ConcretePath> paths(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!call.arguments[i].inout) args[i] = eval(*call.arguments[i].value);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& arg = call.arguments[i];
      if (arg.inout) paths[i] = {arg.path.root, eval_steps(arg.path)};
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (call.arguments[i].inout) navigate(paths[i], call.arguments[i].span);
    }
    for (auto [x, y] : call.maybe_overlaps) {
      if (prefix_related(paths[x], paths[y])) {
        throw RuntimeTrap(TrapKind::OverlapViolation, call.arguments[y].span,
                          "overlapping inout arguments");
      }
    }
    if (bare_callee) callee = variable(call.callee->as<PathExpr>().root);
    for (std::size_t i = 0; i < n; ++i) {
      if (call.arguments[i].inout) args[i] = navigate(paths[i], e.span);
    }

    if (depth_ >= options_.max_call_depth) {
      throw RuntimeTrap(TrapKind::StackOverflow, e.span,
                        "call depth exceeds " +
                            std::to_string(options_.max_call_depth));
    }
    const auto& func = std::get<TreeFunc>(callee->data);
    const auto& lit = *func.lit;

    std::vector<Variable> frame;
    for (std::size_t i = 0; i < n; ++i) {
      frame.push_back({lit.params[i].name, std::move(args[i])});
    }
    for (std::size_t i = 0; i < lit.captures.size(); ++i) {
      frame.push_back({lit.captures[i].name, func.env[i]});
    }

    std::swap(scope_, frame);
    ++depth_;
    auto result = eval(*lit.body);
    --depth_;
    std::swap(scope_, frame);

    for (std::size_t i = 0; i < n; ++i) {
      if (call.arguments[i].inout) {
        navigate(paths[i], e.span) = std::move(frame[i].value);
      }
    }
    return result;
  }

  const TypedProgram& program_;
  OracleOptions options_;
  std::vector<Variable> scope_;
  std::size_t depth_ = 1;
};

}  // namespace

std::string interpret_eager(const TypedProgram& program,
                            const OracleOptions& options) {
  return Interpreter(program, options).run();
}

}  // namespace mvs::oracle
