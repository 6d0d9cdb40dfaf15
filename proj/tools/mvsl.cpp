#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mvs/oracle/differential.hpp"
#include "mvs/oracle/generator.hpp"
#include "mvs/oracle/interpreter.hpp"
#include "mvs/parser.hpp"
#include "mvs/pipeline.hpp"
#include "mvs/runtime/vm.hpp"

namespace {

enum Exit {
  kOk = 0,
  kCompileError = 1,
  kTrap = 2,
  kDiffFail = 3,
  kUsage = 4,
  kInternal = 5,
};

struct Flags {
  std::string input;
  bool stats = false;
  bool no_move_opt = false;
  bool no_cow = false;
  bool oracle = false;
  std::string dump;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump_types_of(const mvs::Expr& e, const std::string& source,
                   std::ostream& os, int indent);

void dump_child(const mvs::ExprPtr& e, const std::string& source,
                std::ostream& os, int indent) {
  if (e) dump_types_of(*e, source, os, indent);
}

// Bindings, closures and the entry expression with their inferred types.
void dump_types_of(const mvs::Expr& e, const std::string& source,
                   std::ostream& os, int indent) {
  auto pad = std::string(static_cast<std::size_t>(indent) * 2, ' ');
  auto at = [&](mvs::Span span) {
    auto lc = mvs::line_col(source, span.start);
    return std::to_string(lc.line) + ":" + std::to_string(lc.column);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, mvs::Binding>) {
          os << pad << at(e.span) << " "
             << (n.mutability == mvs::Mutability::Var ? "var " : "let ")
             << n.name << ": " << n.initializer->type.str() << "\n";
          dump_child(n.initializer, source, os, indent + 1);
          dump_child(n.body, source, os, indent);
        } else if constexpr (std::is_same_v<T, mvs::FuncLit>) {
          os << pad << at(e.span) << " closure: " << e.type.str();
          if (!n.captures.empty()) {
            os << " captures";
            for (const auto& c : n.captures) {
              os << " " << c.name << ": " << c.type.str();
            }
          }
          os << "\n";
          dump_child(n.body, source, os, indent + 1);
        } else if constexpr (std::is_same_v<T, mvs::Assign>) {
          dump_child(n.value, source, os, indent + 1);
          dump_child(n.body, source, os, indent);
        } else if constexpr (std::is_same_v<T, mvs::Cond>) {
          dump_child(n.then_branch, source, os, indent + 1);
          dump_child(n.else_branch, source, os, indent + 1);
        } else if constexpr (std::is_same_v<T, mvs::Call>) {
          for (const auto& a : n.arguments) {
            dump_child(a.value, source, os, indent + 1);
          }
        }
      },
      e.node);
}

std::string dump_types(const mvs::TypedProgram& program,
                       const std::string& source) {
  std::ostringstream os;
  for (const auto& s : program.structs.decls()) {
    os << "struct " << s.name << " {";
    for (std::size_t i = 0; i < s.fields.size(); ++i) {
      const auto& f = s.fields[i];
      os << (i ? ", " : " ")
         << (f.mutability == mvs::Mutability::Var ? "var " : "let ") << f.name
         << ": " << f.type.str();
    }
    os << " }\n";
  }
  dump_types_of(*program.program.entry, source, os, 0);
  os << "entry: " << program.entry_type().str() << "\n";
  return os.str();
}

int run_command(const Flags& flags, bool check_only) {
  auto source = read_file(flags.input);
  if (!source) {
    std::cerr << "error: cannot read " << flags.input << "\n";
    return kUsage;
  }
  std::ostream& dump_out = check_only ? std::cout : std::cerr;
  try {
    auto program = mvs::parse_source(*source);
    if (flags.dump == "ast") dump_out << mvs::print_program(program);
    auto typed = mvs::check_program(std::move(program));
    if (flags.dump == "types") dump_out << dump_types(typed, *source);

    bool move_opt = !flags.no_move_opt;
    std::optional<mvs::ir::IRProgram> ir;
    if (flags.dump == "ir" || (!check_only && !flags.oracle)) {
      ir = mvs::compile(typed, move_opt);
      if (flags.dump == "ir") dump_out << mvs::ir::dump_ir(*ir);
    }
    if (check_only) {
      std::cout << "ok\n";
      return kOk;
    }

    if (flags.oracle) {
      std::cout << mvs::oracle::interpret_eager(typed) << "\n";
      if (flags.stats) std::cerr << "stats are not collected by the oracle\n";
      return kOk;
    }
    mvs::runtime::ExecOptions options;
    options.cow = !flags.no_cow;
    auto result = mvs::runtime::execute(*ir, options);
    std::cout << result.output << "\n";
    if (flags.stats) std::cerr << mvs::runtime::to_json(result.stats) << "\n";
    return kOk;
  } catch (const mvs::SyntaxError& e) {
    std::cerr << mvs::render(*source, e) << "\n";
    return kCompileError;
  } catch (const mvs::TypeError& e) {
    std::cerr << mvs::render(*source, e) << "\n";
    return kCompileError;
  } catch (const mvs::RuntimeTrap& e) {
    std::cerr << mvs::render(*source, e) << "\n";
    return kTrap;
  }
}

int diff_command(const Flags& flags) {
  if (flags.seed || flags.trials) {
    mvs::oracle::GenConfig config;
    config.seed = flags.seed.value_or(0);
    auto trials = flags.trials.value_or(1);
    bool all_pass = true;
    for (std::size_t i = 0; i < trials; ++i) {
      auto source = mvs::oracle::generate_source(config);
      try {
        auto report = mvs::oracle::differential_run_source(source);
        all_pass = all_pass && report.pass;
        std::cout << report.to_json() << "\n";
      } catch (const mvs::SyntaxError& e) {
        std::cerr << "seed " << config.seed << ": " << mvs::render(source, e)
                  << "\n";
        all_pass = false;
      } catch (const mvs::TypeError& e) {
        std::cerr << "seed " << config.seed << ": " << mvs::render(source, e)
                  << "\n";
        all_pass = false;
      }
      ++config.seed;
    }
    return all_pass ? kOk : kDiffFail;
  }

  auto source = read_file(flags.input);
  if (!source) {
    std::cerr << "error: cannot read " << flags.input << "\n";
    return kUsage;
  }
  try {
    auto report = mvs::oracle::differential_run_source(*source);
    std::cout << report.to_json() << "\n";
    return report.pass ? kOk : kDiffFail;
  } catch (const mvs::SyntaxError& e) {
    std::cerr << mvs::render(*source, e) << "\n";
    return kCompileError;
  } catch (const mvs::TypeError& e) {
    std::cerr << mvs::render(*source, e) << "\n";
    return kCompileError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mvsl: a language with mutable value semantics"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--stats", flags.stats, "print runtime counters as JSON");
    cmd->add_flag("--no-move-opt", flags.no_move_opt,
                  "disable copy-to-move conversion");
    cmd->add_flag("--no-cow", flags.no_cow, "copy arrays eagerly");
    cmd->add_flag("--oracle", flags.oracle, "run the reference interpreter");
    cmd->add_option("--dump", flags.dump, "dump an intermediate form")
        ->check(CLI::IsMember({"ast", "ir", "types"}));
  };

  auto* run = app.add_subcommand("run", "execute a program");
  run->add_option("file", flags.input, "source file")->required();
  add_common(run);

  auto* check = app.add_subcommand("check", "type-check a program");
  check->add_option("file", flags.input, "source file")->required();
  add_common(check);

  auto* diff = app.add_subcommand(
      "diff", "compare the oracle and the VM under all configurations");
  diff->add_option("file", flags.input, "source file");
  diff->add_option("--seed", flags.seed, "first generator seed");
  diff->add_option("--trials", flags.trials, "number of generated programs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (run->parsed()) return run_command(flags, false);
    if (check->parsed()) return run_command(flags, true);
    if (flags.input.empty() && !flags.seed && !flags.trials) {
      std::cerr << "diff: a file or --seed/--trials is required\n";
      return kUsage;
    }
    return diff_command(flags);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
