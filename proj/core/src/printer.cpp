#include <charconv>
#include <string>

#include "mvs/parser.hpp"

namespace mvs {

namespace {

std::string format_float_literal(double value) {
  char buf[512];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  std::string out(buf, ptr);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

class Printer {
 public:
  std::string take() { return std::move(out_); }

  void program(const Program& p) {
    for (const auto& decl : p.structs) {
      out_ += "struct " + decl.name + " {";
      for (std::size_t i = 0; i < decl.fields.size(); ++i) {
        const auto& f = decl.fields[i];
        out_ += i ? "; " : " ";
        out_ += f.mutability == Mutability::Let ? "let " : "var ";
        out_ += f.name + ": " + f.type.str();
      }
      out_ += decl.fields.empty() ? "} in\n" : " } in\n";
    }
    expr(*p.entry);
    out_ += "\n";
  }

  void expr(const Expr& e) { std::visit([&](const auto& n) { node(n); }, e.node); }

 private:
  void path(const PathExpr& p) {
    out_ += p.root;
    for (const auto& acc : p.accessors) {
      if (acc.kind == Accessor::Kind::Field) {
        out_ += "." + acc.field;
      } else {
        out_ += "[";
        expr(*acc.index);
        out_ += "]";
      }
    }
  }

  // Operands of binary operators and callees are printed atomically.
  void atom(const Expr& e) {
    bool wrap = e.is<Binary>() || e.is<Binding>() || e.is<Assign>() ||
                e.is<Cond>() || e.is<FuncLit>();
    if (wrap) out_ += "(";
    expr(e);
    if (wrap) out_ += ")";
  }

  void node(const Binding& b) {
    out_ += b.mutability == Mutability::Let ? "let " : "var ";
    out_ += b.name;
    if (b.annotation) out_ += ": " + b.annotation->str();
    out_ += " = ";
    expr(*b.initializer);
    out_ += " in\n";
    expr(*b.body);
  }

  void node(const Assign& a) {
    path(a.target);
    out_ += " = ";
    expr(*a.value);
    out_ += " in\n";
    expr(*a.body);
  }

  void node(const IntLit& lit) { out_ += std::to_string(lit.value); }

  void node(const FloatLit& lit) { out_ += format_float_literal(lit.value); }

  void node(const ArrayLit& lit) {
    out_ += "[";
    for (std::size_t i = 0; i < lit.elements.size(); ++i) {
      if (i) out_ += ", ";
      expr(*lit.elements[i]);
    }
    out_ += "]";
  }

  void node(const StructInit& init) {
    out_ += init.name + "(";
    for (std::size_t i = 0; i < init.arguments.size(); ++i) {
      if (i) out_ += ", ";
      expr(*init.arguments[i]);
    }
    out_ += ")";
  }

  void node(const FuncLit& lit) {
    out_ += "(";
    for (std::size_t i = 0; i < lit.params.size(); ++i) {
      const auto& p = lit.params[i];
      if (i) out_ += ", ";
      out_ += p.name + ": ";
      if (p.passing == Passing::Inout) out_ += "inout ";
      out_ += p.type.str();
    }
    out_ += ") -> " + lit.codomain.str() + " {\n";
    expr(*lit.body);
    out_ += "\n}";
  }

  void node(const Call& call) {
    if (call.callee->is<PathExpr>() || call.callee->is<Call>()) {
      expr(*call.callee);
    } else {
      out_ += "(";
      expr(*call.callee);
      out_ += ")";
    }
    out_ += "(";
    for (std::size_t i = 0; i < call.arguments.size(); ++i) {
      if (i) out_ += ", ";
      const auto& arg = call.arguments[i];
      if (arg.inout) {
        out_ += "&";
        path(arg.path);
      } else {
        expr(*arg.value);
      }
    }
    out_ += ")";
  }

  void node(const PathExpr& p) { path(p); }

  void node(const Binary& b) {
    atom(*b.lhs);
    out_ += " ";
    out_ += spelling(b.op);
    out_ += " ";
    atom(*b.rhs);
  }

  void node(const Cond& c) {
    out_ += "if ";
    expr(*c.condition);
    out_ += " then ";
    expr(*c.then_branch);
    out_ += " else ";
    expr(*c.else_branch);
  }

  std::string out_;
};

}  // namespace

std::string print_program(const Program& program) {
  Printer p;
  p.program(program);
  return p.take();
}

std::string print_expr(const Expr& expr) {
  Printer p;
  p.expr(expr);
  return p.take();
}

}  // namespace mvs
