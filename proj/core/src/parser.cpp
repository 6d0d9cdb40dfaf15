#include "mvs/parser.hpp"

#include <charconv>
#include <set>

namespace mvs {

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
      throw SyntaxError(Span{}, "token stream is not terminated");
    }
  }

  Program parse() {
    Program program;
    while (peek().is_keyword("struct")) {
      program.structs.push_back(parse_struct());
      if (peek().is_punct(";") || peek().is_keyword("in")) advance();
    }
    program.entry = parse_expr();
    if (peek().kind != TokenKind::End) fail({"end of input"});
    return program;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    auto i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  std::size_t last_end() const {
    return pos_ == 0 ? 0 : tokens_[pos_ - 1].span.end;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End
                            ? std::string("end of input")
                            : "'" + t.lexeme + "'";
    throw SyntaxError(t.span, "unexpected " + found, std::move(expected));
  }

  const Token& expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail({"'" + std::string(p) + "'"});
    return advance();
  }

  const Token& expect_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) fail({"'" + std::string(k) + "'"});
    return advance();
  }

  const Token& expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail({"identifier"});
    return advance();
  }

  StructDecl parse_struct() {
    auto start = expect_keyword("struct").span.start;
    StructDecl decl;
    auto& name = expect_identifier();
    decl.name = name.lexeme;
    if (!struct_names_.insert(decl.name).second) {
      throw SyntaxError(name.span, "duplicate struct '" + decl.name + "'");
    }
    expect_punct("{");
    while (!peek().is_punct("}")) {
      FieldDecl field;
      auto field_start = peek().span.start;
      if (peek().is_keyword("let")) {
        field.mutability = Mutability::Let;
      } else if (peek().is_keyword("var")) {
        field.mutability = Mutability::Var;
      } else {
        fail({"'let'", "'var'", "'}'"});
      }
      advance();
      auto& field_name = expect_identifier();
      field.name = field_name.lexeme;
      if (decl.field_index(field.name) >= 0) {
        throw SyntaxError(field_name.span,
                          "duplicate field '" + field.name + "'");
      }
      expect_punct(":");
      field.type = parse_type();
      field.span = Span{field_start, last_end()};
      decl.fields.push_back(std::move(field));
      if (peek().is_punct(";")) advance();
    }
    expect_punct("}");
    decl.span = Span{start, last_end()};
    return decl;
  }

  Type parse_type() {
    if (peek().kind == TokenKind::Identifier) {
      auto name = advance().lexeme;
      if (name == "Int") return Type::integer();
      if (name == "Float") return Type::floating();
      return Type::structure(name);
    }
    if (peek().is_punct("[")) {
      advance();
      auto element = parse_type();
      expect_punct("]");
      return Type::array(std::move(element));
    }
    if (peek().is_punct("(")) {
      advance();
      std::vector<Type::Param> params;
      while (!peek().is_punct(")")) {
        auto passing = Passing::ByValue;
        if (peek().is_keyword("inout")) {
          advance();
          passing = Passing::Inout;
        }
        params.push_back(Type::param(passing, parse_type()));
        if (!peek().is_punct(",")) break;
        advance();
      }
      expect_punct(")");
      if (peek().kind != TokenKind::Arrow) fail({"'->'"});
      advance();
      return Type::function(std::move(params), parse_type());
    }
    fail({"type"});
  }

  ExprPtr parse_expr() {
    const Token& t = peek();
    if (t.is_keyword("let") || t.is_keyword("var")) return parse_binding();
    if (t.kind == TokenKind::Underscore && peek(1).is_operator("=")) {
      return parse_assign(parse_wildcard_path());
    }
    if (t.kind == TokenKind::Identifier) {
      auto start = t.span.start;
      auto lhs = parse_postfix();
      if (lhs->is<PathExpr>() && peek().is_operator("=")) {
        return parse_assign(std::move(lhs->as<PathExpr>()), start);
      }
      return parse_binary_rhs(std::move(lhs), 0);
    }
    return parse_binary(0);
  }

  PathExpr parse_wildcard_path() {
    auto& t = advance();
    return PathExpr{std::string(kWildcard), t.span, {}};
  }

  ExprPtr parse_assign(PathExpr target) {
    auto start = target.root_span.start;
    return parse_assign(std::move(target), start);
  }

  ExprPtr parse_assign(PathExpr target, std::size_t start) {
    advance();  // '='
    Assign assign;
    assign.target = std::move(target);
    assign.value = parse_expr();
    expect_keyword("in");
    assign.body = parse_expr();
    return make_expr(std::move(assign), Span{start, last_end()});
  }

  ExprPtr parse_binding() {
    auto start = peek().span.start;
    Binding binding;
    binding.mutability =
        advance().lexeme == "let" ? Mutability::Let : Mutability::Var;
    if (peek().kind == TokenKind::Underscore) {
      binding.name = std::string(kWildcard);
      advance();
    } else {
      binding.name = expect_identifier().lexeme;
    }
    if (peek().is_punct(":")) {
      advance();
      binding.annotation = parse_type();
    }
    if (peek().is_punct("{") && binding.annotation &&
        binding.annotation->is(Type::Kind::Func)) {
      // `var f: () -> T { body }` is sugar for a parameterless literal.
      auto brace = peek().span;
      if (!binding.annotation->params().empty()) {
        throw SyntaxError(brace,
                          "function body shorthand requires a parameterless "
                          "function type");
      }
      advance();
      FuncLit lit;
      lit.codomain = binding.annotation->codomain();
      lit.body = parse_expr();
      expect_punct("}");
      binding.initializer =
          make_expr(std::move(lit), Span{brace.start, last_end()});
    } else {
      if (!peek().is_operator("=")) fail({"'='"});
      advance();
      binding.initializer = parse_expr();
    }
    expect_keyword("in");
    binding.body = parse_expr();
    return make_expr(std::move(binding), Span{start, last_end()});
  }

  static int precedence(const Token& t, BinaryOp& op) {
    if (t.kind != TokenKind::Operator) return -1;
    const auto& s = t.lexeme;
    if (s == "==") { op = BinaryOp::Eq; return 1; }
    if (s == "!=") { op = BinaryOp::Ne; return 1; }
    if (s == "<") { op = BinaryOp::Lt; return 1; }
    if (s == "<=") { op = BinaryOp::Le; return 1; }
    if (s == ">") { op = BinaryOp::Gt; return 1; }
    if (s == ">=") { op = BinaryOp::Ge; return 1; }
    if (s == "+") { op = BinaryOp::Add; return 2; }
    if (s == "-") { op = BinaryOp::Sub; return 2; }
    if (s == "*") { op = BinaryOp::Mul; return 3; }
    if (s == "/") { op = BinaryOp::Div; return 3; }
    if (s == "%") { op = BinaryOp::Rem; return 3; }
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    return parse_binary_rhs(parse_postfix(), min_prec);
  }

  // Precedence climbing; all levels are left-associative.
  ExprPtr parse_binary_rhs(ExprPtr lhs, int min_prec) {
    while (true) {
      BinaryOp op{};
      int prec = precedence(peek(), op);
      if (prec < 0 || prec < min_prec) return lhs;
      advance();
      auto rhs = parse_postfix();
      BinaryOp next_op{};
      while (precedence(peek(), next_op) > prec) {
        rhs = parse_binary_rhs(std::move(rhs), prec + 1);
      }
      Span span{lhs->span.start, rhs->span.end};
      lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)}, span);
    }
  }

  ExprPtr parse_postfix() {
    auto start = peek().span.start;
    auto expr = parse_primary();
    while (true) {
      if (peek().is_punct("(")) {
        expr = parse_call(std::move(expr), start);
      } else if (peek().is_punct(".") || peek().is_punct("[")) {
        if (!expr->is<PathExpr>()) {
          throw SyntaxError(peek().span,
                            "accessors apply only to variable paths");
        }
        parse_accessor(expr->as<PathExpr>());
        expr->span.end = last_end();
      } else {
        return expr;
      }
    }
  }

  void parse_accessor(PathExpr& path) {
    auto start = peek().span.start;
    Accessor acc;
    if (peek().is_punct(".")) {
      advance();
      acc.kind = Accessor::Kind::Field;
      acc.field = expect_identifier().lexeme;
    } else {
      advance();
      acc.kind = Accessor::Kind::Index;
      acc.index = parse_expr();
      expect_punct("]");
    }
    acc.span = Span{start, last_end()};
    path.accessors.push_back(std::move(acc));
  }

  ExprPtr parse_call(ExprPtr callee, std::size_t start) {
    expect_punct("(");
    std::vector<Arg> args;
    while (!peek().is_punct(")")) {
      Arg arg;
      auto arg_start = peek().span.start;
      if (peek().kind == TokenKind::Ampersand) {
        advance();
        arg.inout = true;
        arg.path = parse_path_only();
      } else {
        arg.value = parse_expr();
      }
      arg.span = Span{arg_start, last_end()};
      args.push_back(std::move(arg));
      if (!peek().is_punct(",")) break;
      advance();
    }
    expect_punct(")");
    Span span{start, last_end()};

    if (callee->is<PathExpr>() && callee->as<PathExpr>().accessors.empty() &&
        struct_names_.count(callee->as<PathExpr>().root)) {
      StructInit init;
      init.name = callee->as<PathExpr>().root;
      for (auto& arg : args) {
        if (arg.inout) {
          throw SyntaxError(arg.span,
                            "inout argument in structure initializer");
        }
        init.arguments.push_back(std::move(arg.value));
      }
      return make_expr(std::move(init), span);
    }
    return make_expr(Call{std::move(callee), std::move(args), {}}, span);
  }

  PathExpr parse_path_only() {
    PathExpr path;
    if (peek().kind == TokenKind::Underscore) {
      path = parse_wildcard_path();
    } else {
      auto& root = expect_identifier();
      path.root = root.lexeme;
      path.root_span = root.span;
    }
    while (peek().is_punct(".") || peek().is_punct("[")) {
      parse_accessor(path);
    }
    return path;
  }

  bool at_function_literal() const {
    if (!peek().is_punct("(")) return false;
    if (peek(1).is_punct(")")) return peek(2).kind == TokenKind::Arrow;
    return (peek(1).kind == TokenKind::Identifier ||
            peek(1).kind == TokenKind::Underscore) &&
           peek(2).is_punct(":");
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    auto start = t.span.start;
    switch (t.kind) {
      case TokenKind::IntLiteral: {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(
            t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), value);
        if (ec != std::errc() || ptr != t.lexeme.data() + t.lexeme.size()) {
          throw SyntaxError(t.span, "integer literal out of range");
        }
        advance();
        return make_expr(IntLit{value}, t.span);
      }
      case TokenKind::FloatLiteral: {
        double value = 0;
        std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(),
                        value);
        advance();
        return make_expr(FloatLit{value}, t.span);
      }
      case TokenKind::Identifier:
      case TokenKind::Underscore: {
        advance();
        return make_expr(PathExpr{t.lexeme, t.span, {}}, t.span);
      }
      default:
        break;
    }
    if (t.is_keyword("if")) {
      advance();
      Cond cond;
      cond.condition = parse_expr();
      expect_keyword("then");
      cond.then_branch = parse_expr();
      expect_keyword("else");
      cond.else_branch = parse_expr();
      return make_expr(std::move(cond), Span{start, last_end()});
    }
    if (t.is_punct("[")) {
      advance();
      ArrayLit lit;
      while (!peek().is_punct("]")) {
        lit.elements.push_back(parse_expr());
        if (!peek().is_punct(",")) break;
        advance();
      }
      expect_punct("]");
      return make_expr(std::move(lit), Span{start, last_end()});
    }
    if (at_function_literal()) return parse_function_literal();
    if (t.is_punct("(")) {
      advance();
      auto inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    fail({"expression"});
  }

  ExprPtr parse_function_literal() {
    auto start = expect_punct("(").span.start;
    FuncLit lit;
    while (!peek().is_punct(")")) {
      FuncParam param;
      auto param_start = peek().span.start;
      param.name = expect_identifier().lexeme;
      expect_punct(":");
      if (peek().is_keyword("inout")) {
        advance();
        param.passing = Passing::Inout;
      }
      param.type = parse_type();
      param.span = Span{param_start, last_end()};
      lit.params.push_back(std::move(param));
      if (!peek().is_punct(",")) break;
      advance();
    }
    expect_punct(")");
    if (peek().kind != TokenKind::Arrow) fail({"'->'"});
    advance();
    lit.codomain = parse_type();
    expect_punct("{");
    lit.body = parse_expr();
    expect_punct("}");
    return make_expr(std::move(lit), Span{start, last_end()});
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> struct_names_;
};

}  // namespace

Program parse_program(const std::vector<Token>& tokens) {
  return Parser(tokens).parse();
}

Program parse_source(std::string_view source) {
  return parse_program(tokenize(source));
}

}  // namespace mvs
