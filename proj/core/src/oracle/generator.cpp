#include "mvs/oracle/generator.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "mvs/parser.hpp"

namespace mvs::oracle {

namespace {

// Stored integers are reduced modulo this value so that expression depth,
// not program length, bounds every intermediate result.
constexpr int kIntModulus = 997;

struct Field {
  std::string name;
  Type type;
  bool is_var = true;
};

struct Decl {
  std::string name;
  std::vector<Field> fields;
};

struct Var {
  std::string name;
  Type type;
  bool is_mutable = false;
};

struct GenStep {
  bool is_index = false;
  std::string field;
  std::size_t literal = 0;
  std::size_t length = 0;
};

struct GenPath {
  std::string root;
  std::vector<GenStep> steps;
  Type type;
  bool is_mutable = false;
};

// Two literal-index paths are statically disjoint iff their roots differ or
// some common step differs.
bool disjoint(const GenPath& a, const GenPath& b) {
  if (a.root != b.root) return true;
  auto n = std::min(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    if (x.is_index != y.is_index) return true;
    if (x.is_index ? x.literal != y.literal : x.field != y.field) return true;
  }
  return false;
}

class Generator {
 public:
  explicit Generator(const GenConfig& config)
      : config_(config),
        rng_(config.seed),
        budget_(static_cast<long>(config.size_budget)) {}

  std::string program() {
    if (config_.size_budget <= 1) return std::to_string(below(100)) + "\n";
    std::string out = declarations();
    auto result = pick_result_type();
    out += chain(result, 0, /*top=*/true);
    out += "\n";
    return out;
  }

  CopyMutateCase copy_mutate() {
    std::string decls = declarations();
    Type type = pick_data_type(0);
    while (!contains_array(type) && chance(70)) type = pick_data_type(0);
    auto value = literal_value(type);

    CopyMutateCase out;
    out.original = decls + value + "\n";
    std::string text = decls + "var p: " + type.str() + " = " + value + " in\n";
    text += "var q = p in\n";
    scope_.push_back({"p", type, true});
    scope_.push_back({"q", type, true});
    mutation_root_ = "q";
    while (budget_ > 0) text += statement(0);
    text += "p\n";
    out.program = std::move(text);
    return out;
  }

 private:
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

  // ----- types -----

  std::string declarations() {
    std::string out;
    for (std::size_t i = 0; i < config_.struct_count; ++i) {
      Decl d;
      d.name = "S" + std::to_string(i);
      auto count = 1 + below(3);
      for (std::size_t f = 0; f < count; ++f) {
        Field field;
        field.name = std::string(1, static_cast<char>('a' + f));
        field.is_var = chance(85);
        auto pick = below(10);
        if (pick < 4 || decls_.empty()) {
          field.type = pick < 1 ? Type::floating() : Type::integer();
          if (pick >= 2 && pick < 4) field.type = Type::array(Type::integer());
        } else {
          auto inner = Type::structure(decls_[below(decls_.size())].name);
          field.type = pick < 8 ? inner : Type::array(inner);
        }
        d.fields.push_back(field);
      }
      out += "struct " + d.name + " {\n";
      for (const auto& f : d.fields) {
        out += std::string("  ") + (f.is_var ? "var " : "let ") + f.name +
               ": " + f.type.str() + "\n";
      }
      out += "}\n";
      decls_.push_back(std::move(d));
    }
    return out;
  }

  const Decl& decl(const std::string& name) const {
    for (const auto& d : decls_) {
      if (d.name == name) return d;
    }
    return decls_.front();
  }

  std::size_t length_of(const Type& array) {
    auto key = array.str();
    auto it = lengths_.find(key);
    if (it != lengths_.end()) return it->second;
    auto n = 1 + below(3);
    lengths_.emplace(key, n);
    return n;
  }

  bool contains_array(const Type& t) const {
    if (t.is(Type::Kind::Array)) return true;
    if (t.is(Type::Kind::Struct)) {
      for (const auto& f : decl(t.name()).fields) {
        if (contains_array(f.type)) return true;
      }
    }
    return false;
  }

  Type pick_data_type(int nesting) {
    auto pick = below(12);
    if (pick < 4) return Type::integer();
    if (pick < 5) return Type::floating();
    if (pick < 8 && !decls_.empty()) {
      return Type::structure(decls_[below(decls_.size())].name);
    }
    if (nesting < 1 && pick == 11) {
      return Type::array(pick_data_type(nesting + 1));
    }
    if (pick < 10) return Type::array(Type::integer());
    if (!decls_.empty()) {
      return Type::array(Type::structure(decls_[below(decls_.size())].name));
    }
    return Type::array(Type::integer());
  }

  Type pick_func_type() {
    std::vector<Type::Param> params;
    auto count = below(3);
    auto targets = paths([](const Type& t) { return !t.is(Type::Kind::Func); },
                         true);
    for (std::size_t i = 0; i < count; ++i) {
      bool inout = config_.enable_inout && chance(60);
      // Favour types that some mutable path can supply.
      Type type = !targets.empty() && chance(70)
                      ? targets[below(targets.size())].type
                      : pick_data_type(0);
      params.push_back(
          Type::param(inout ? Passing::Inout : Passing::ByValue, type));
    }
    return Type::function(std::move(params), pick_data_type(0));
  }

  Type pick_result_type() {
    auto pick = below(4);
    if (pick == 0) return Type::integer();
    return pick_data_type(0);
  }

  // ----- paths -----

  void collect(GenPath path, int depth, std::vector<GenPath>& out) {
    out.push_back(path);
    if (depth == 0) return;
    if (path.type.is(Type::Kind::Struct)) {
      for (const auto& f : decl(path.type.name()).fields) {
        GenPath child = path;
        child.steps.push_back({false, f.name, 0, 0});
        child.type = f.type;
        child.is_mutable = path.is_mutable && f.is_var;
        collect(std::move(child), depth - 1, out);
      }
    } else if (path.type.is(Type::Kind::Array)) {
      auto n = length_of(path.type);
      GenPath child = path;
      child.steps.push_back({true, "", below(n), n});
      child.type = path.type.element();
      collect(std::move(child), depth - 1, out);
    }
  }

  std::vector<GenPath> paths(const std::function<bool(const Type&)>& want,
                             bool mutable_only) {
    std::vector<GenPath> all;
    for (const auto& v : scope_) {
      if (mutable_only && !v.is_mutable) continue;
      if (mutable_only && mutation_root_ && v.name != *mutation_root_) continue;
      collect(GenPath{v.name, {}, v.type, v.is_mutable}, 3, all);
    }
    std::vector<GenPath> out;
    for (auto& p : all) {
      if (want(p.type) && (!mutable_only || p.is_mutable)) {
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  std::optional<GenPath> pick_path(const Type& type, bool mutable_only) {
    auto found = paths([&](const Type& t) { return t == type; }, mutable_only);
    if (found.empty()) return std::nullopt;
    return found[below(found.size())];
  }

  std::string render(const GenPath& path, int depth, bool dynamic) {
    std::string out = path.root;
    for (const auto& step : path.steps) {
      if (!step.is_index) {
        out += "." + step.field;
      } else if (dynamic && step.length > 1 && chance(25)) {
        auto other = below(step.length);
        out += "[(if " + expr(Type::integer(), depth + 1) + " then " +
               std::to_string(step.literal) + " else " +
               std::to_string(other) + ")]";
      } else {
        out += "[" + std::to_string(step.literal) + "]";
      }
    }
    return out;
  }

  // ----- expressions -----

  std::string fresh(const char* prefix) {
    return prefix + std::to_string(counter_++);
  }

  bool leaf_only(int depth) const {
    return budget_ <= 0 || depth >= static_cast<int>(config_.max_depth);
  }

  // A value stored into a binding, field, element, argument or result.
  std::string stored(const Type& type, int depth) {
    auto text = expr(type, depth);
    if (type.is(Type::Kind::Int) && !is_atom(text)) {
      return "((" + text + ") % " + std::to_string(kIntModulus) + ")";
    }
    return text;
  }

  static bool is_atom(const std::string& text) {
    for (char c : text) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' &&
          c != '[' && c != ']' && c != '_') {
        return false;
      }
    }
    return true;
  }

  std::string literal_value(const Type& type) {
    switch (type.kind()) {
      case Type::Kind::Int:
        return std::to_string(below(100));
      case Type::Kind::Float:
        return std::to_string(below(100)) + "." + std::to_string(below(10));
      case Type::Kind::Struct: {
        const auto& d = decl(type.name());
        std::string out = d.name + "(";
        for (std::size_t i = 0; i < d.fields.size(); ++i) {
          if (i) out += ", ";
          out += literal_value(d.fields[i].type);
        }
        return out + ")";
      }
      case Type::Kind::Array: {
        std::string out = "[";
        auto n = length_of(type);
        for (std::size_t i = 0; i < n; ++i) {
          if (i) out += ", ";
          out += literal_value(type.element());
        }
        return out + "]";
      }
      case Type::Kind::Func:
        return closure(type, static_cast<int>(config_.max_depth));
    }
    return "0";
  }

  std::string leaf(const Type& type, int depth) {
    if (!type.is(Type::Kind::Func) && chance(60)) {
      if (auto p = pick_path(type, false)) return render(*p, depth, false);
    }
    if (type.is(Type::Kind::Func)) {
      if (auto p = pick_path(type, false)) return p->root;
    }
    switch (type.kind()) {
      case Type::Kind::Struct: {
        const auto& d = decl(type.name());
        std::string out = d.name + "(";
        for (std::size_t i = 0; i < d.fields.size(); ++i) {
          if (i) out += ", ";
          out += leaf(d.fields[i].type, depth);
        }
        return out + ")";
      }
      case Type::Kind::Array: {
        std::string out = "[";
        auto n = length_of(type);
        for (std::size_t i = 0; i < n; ++i) {
          if (i) out += ", ";
          out += leaf(type.element(), depth);
        }
        return out + "]";
      }
      default:
        return literal_value(type);
    }
  }

  std::string expr(const Type& type, int depth) {
    --budget_;
    if (leaf_only(depth)) return leaf(type, depth);
    auto pick = below(100);

    if (pick < 10) {
      if (auto call_text = call(type, depth)) return *call_text;
    }
    if (pick < 18) {
      return "(if " + expr(Type::integer(), depth + 1) + " then " +
             expr(type, depth + 1) + " else " + expr(type, depth + 1) + ")";
    }
    if (pick < 26) return "(" + chain(type, depth + 1, false) + ")";

    switch (type.kind()) {
      case Type::Kind::Int: {
        if (pick < 45) {
          const char* op = chance(50) ? " + " : " - ";
          return "(" + expr(type, depth + 1) + op + expr(type, depth + 1) + ")";
        }
        if (pick < 52) {
          return "(" + std::to_string(below(100)) + " * " +
                 std::to_string(below(100)) + ")";
        }
        if (pick < 60) {
          const char* op = chance(50) ? " / " : " % ";
          return "(" + expr(type, depth + 1) + op + std::to_string(1 + below(9)) +
                 ")";
        }
        if (pick < 70) {
          static const char* ops[] = {" == ", " != ", " < ", " <= ", " > ",
                                      " >= "};
          Type operand = chance(80) ? Type::integer() : Type::floating();
          return "(" + expr(operand, depth + 1) + ops[below(6)] +
                 expr(operand, depth + 1) + ")";
        }
        return leaf(type, depth);
      }
      case Type::Kind::Float: {
        if (pick < 50) {
          const char* op = chance(50) ? " + " : " - ";
          return "(" + expr(type, depth + 1) + op + expr(type, depth + 1) + ")";
        }
        if (pick < 60) {
          return "(" + literal_value(type) + " * " + literal_value(type) + ")";
        }
        return leaf(type, depth);
      }
      case Type::Kind::Struct: {
        if (pick < 60) {
          const auto& d = decl(type.name());
          std::string out = d.name + "(";
          for (std::size_t i = 0; i < d.fields.size(); ++i) {
            if (i) out += ", ";
            out += stored(d.fields[i].type, depth + 1);
          }
          return out + ")";
        }
        return leaf(type, depth);
      }
      case Type::Kind::Array: {
        if (pick < 60) {
          std::string out = "[";
          auto n = length_of(type);
          for (std::size_t i = 0; i < n; ++i) {
            if (i) out += ", ";
            out += stored(type.element(), depth + 1);
          }
          return out + "]";
        }
        return leaf(type, depth);
      }
      case Type::Kind::Func:
        if (pick < 60 || !pick_path(type, false)) return closure(type, depth);
        return leaf(type, depth);
    }
    return leaf(type, depth);
  }

  std::optional<std::string> call(const Type& result, int depth) {
    std::vector<const Var*> candidates;
    for (const auto& v : scope_) {
      if (v.type.is(Type::Kind::Func) && v.type.codomain() == result) {
        candidates.push_back(&v);
      }
    }
    if (candidates.empty()) return std::nullopt;
    return call_to(*candidates[below(candidates.size())], depth);
  }

  std::optional<std::string> call_to(Var callee, int depth) {
    const auto params = callee.type.params();

    // Choose pairwise disjoint inout paths first so failure leaves no trace.
    std::vector<std::optional<GenPath>> inout(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].passing != Passing::Inout) continue;
      auto options = paths(
          [&](const Type& t) { return t == *params[i].type; }, true);
      std::vector<GenPath> usable;
      for (auto& o : options) {
        bool ok = true;
        for (std::size_t j = 0; j < i; ++j) {
          if (inout[j] && !disjoint(*inout[j], o)) ok = false;
        }
        if (ok) usable.push_back(std::move(o));
      }
      if (usable.empty()) return std::nullopt;
      inout[i] = usable[below(usable.size())];
    }

    std::string out = callee.name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out += ", ";
      if (inout[i]) {
        bool unique_root = true;
        for (std::size_t j = 0; j < params.size(); ++j) {
          if (j != i && inout[j] && inout[j]->root == inout[i]->root) {
            unique_root = false;
          }
        }
        out += "&" + render(*inout[i], depth + 1, unique_root);
      } else {
        out += stored(*params[i].type, depth + 1);
      }
    }
    return out + ")";
  }

  std::string closure(const Type& type, int depth) {
    std::string out = "(";
    auto saved = scope_.size();
    auto saved_root = mutation_root_;
    mutation_root_.reset();
    const auto& params = type.params();
    for (std::size_t i = 0; i < params.size(); ++i) {
      bool inout = params[i].passing == Passing::Inout;
      auto name = fresh("p");
      if (i) out += ", ";
      out += name + ": " + (inout ? "inout " : "") + params[i].type->str();
      scope_.push_back({name, *params[i].type, inout});
    }
    out += ") -> " + type.codomain().str() + " { ";
    std::string prefix;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].passing != Passing::Inout || !chance(70)) continue;
      mutation_root_ = scope_[saved + i].name;
      if (auto a = assignment(depth + 1)) prefix += *a;
      mutation_root_.reset();
    }
    auto body = chain(type.codomain(), depth + 1, false);
    if (type.codomain().is(Type::Kind::Int) && !is_atom(body)) {
      body = "((" + body + ") % " + std::to_string(kIntModulus) + ")";
    }
    out += prefix + body + " }";
    scope_.resize(saved);
    mutation_root_ = saved_root;
    return out;
  }

  // ----- statements -----

  std::string binding(int depth) {
    if (chance(25)) {
      // Copy an existing component into a fresh variable.
      auto sources =
          paths([](const Type& t) { return !t.is(Type::Kind::Func); }, false);
      if (!sources.empty()) {
        auto source = sources[below(sources.size())];
        bool is_var = chance(70);
        auto name = fresh("v");
        auto text = std::string(is_var ? "var " : "let ") + name + " = " +
                    render(source, depth + 1, true) + " in\n";
        scope_.push_back({name, source.type, is_var});
        return text;
      }
    }
    std::size_t data_vars = 0;
    for (const auto& v : scope_) {
      if (!v.type.is(Type::Kind::Func) && v.is_mutable) ++data_vars;
    }
    bool closures = config_.enable_closures && data_vars > 0 && chance(40);
    Type type = closures ? pick_func_type() : pick_data_type(0);
    bool is_var = closures ? chance(50) : chance(75);
    auto name = fresh(closures ? "f" : "v");
    std::string out = is_var ? "var " : "let ";
    out += name;
    if (chance(40)) out += ": " + type.str();
    out += " = " + stored(type, depth + 1) + " in\n";
    scope_.push_back({name, type, is_var});
    if (closures && chance(60)) {
      if (auto text = call_to(scope_.back(), depth)) {
        out += "_ = " + *text + " in\n";
      }
    }
    return out;
  }

  std::optional<std::string> assignment(int depth) {
    auto targets = paths([](const Type&) { return true; }, true);
    if (targets.empty()) return std::nullopt;
    auto target = targets[below(targets.size())];
    auto lhs = render(target, depth + 1, true);
    return lhs + " = " + stored(target.type, depth + 1) + " in\n";
  }

  std::optional<std::string> call_statement(int depth) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      auto type = pick_data_type(0);
      if (auto text = call(type, depth)) {
        return "_ = " + *text + " in\n";
      }
    }
    std::vector<const Var*> funcs;
    for (const auto& v : scope_) {
      if (v.type.is(Type::Kind::Func)) funcs.push_back(&v);
    }
    if (funcs.empty()) return std::nullopt;
    auto type = funcs[below(funcs.size())]->type.codomain();
    if (auto text = call(type, depth)) return "_ = " + *text + " in\n";
    return std::nullopt;
  }

  std::optional<std::string> conditional_mutation(int depth) {
    auto then_branch = assignment(depth + 1);
    if (!then_branch) return std::nullopt;
    std::string else_branch = "0";
    if (chance(50)) {
      if (auto other = assignment(depth + 1)) else_branch = *other + "0";
    }
    return "_ = (if " + expr(Type::integer(), depth + 1) + " then (" +
           *then_branch + "0) else (" + else_branch + ")) in\n";
  }

  std::string statement(int depth) {
    --budget_;
    auto pick = below(100);
    if (mutation_root_) {
      // Copy-then-mutate programs only bind helpers and mutate the copy.
      if (pick < 15) return binding(depth);
      if (pick < 60) {
        if (auto s = assignment(depth)) return *s;
      } else if (pick < 80) {
        if (auto s = conditional_mutation(depth)) return *s;
      } else {
        if (config_.enable_closures) return mutating_closure(depth);
      }
      return binding(depth);
    }
    if (pick < 35) return binding(depth);
    if (pick < 55) {
      if (auto s = assignment(depth)) return *s;
    } else if (pick < 72) {
      if (auto s = call_statement(depth)) return *s;
    } else if (pick < 84) {
      if (config_.enable_closures && config_.enable_inout) {
        return mutating_closure(depth);
      }
    } else {
      if (auto s = conditional_mutation(depth)) return *s;
    }
    return binding(depth);
  }

  // Binds a closure taking `inout` one component of q and calls it on that
  // component.
  std::string mutating_closure(int depth) {
    auto target = paths([](const Type&) { return true; }, true);
    if (target.empty()) return binding(depth);
    auto path = target[below(target.size())];
    auto type = Type::function(
        {Type::param(Passing::Inout, path.type)}, Type::integer());
    auto name = fresh("f");
    auto text = "let " + name + " = " + closure(type, depth + 1) + " in\n";
    text += "_ = " + name + "(&" + render(path, depth + 1, true) + ") in\n";
    return text;
  }

  std::string chain(const Type& type, int depth, bool top) {
    auto saved = scope_.size();
    std::string out;
    if (top) {
      while (budget_ > 1) out += statement(depth);
    } else {
      auto count = below(3);
      for (std::size_t i = 0; i < count && budget_ > 0 &&
                              depth < static_cast<int>(config_.max_depth);
           ++i) {
        out += statement(depth);
      }
    }
    if (top && chance(70)) {
      if (auto p = pick_path(type, false)) {
        out += render(*p, depth, false);
        scope_.resize(saved);
        return out;
      }
    }
    out += expr(type, depth);
    scope_.resize(saved);
    return out;
  }

  GenConfig config_;
  std::mt19937_64 rng_;
  long budget_;
  std::vector<Decl> decls_;
  std::map<std::string, std::size_t> lengths_;
  std::vector<Var> scope_;
  std::optional<std::string> mutation_root_;
  std::size_t counter_ = 0;
};

}  // namespace

std::string generate_source(const GenConfig& config) {
  return Generator(config).program();
}

Program generate_program(const GenConfig& config) {
  return parse_source(generate_source(config));
}

CopyMutateCase generate_copy_mutate(std::uint64_t seed,
                                    std::size_t size_budget) {
  GenConfig config;
  config.seed = seed;
  config.size_budget = size_budget;
  return Generator(config).copy_mutate();
}

}  // namespace mvs::oracle
