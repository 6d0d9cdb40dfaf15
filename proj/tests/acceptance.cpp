// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <iomanip>
#include <sstream>

#include "mvs/oracle/differential.hpp"
#include "mvs/oracle/generator.hpp"
#include "mvs/oracle/interpreter.hpp"
#include "mvs/runtime/layout.hpp"
#include "support.hpp"

namespace {

using mvs::test::corpus_path;
using mvs::test::read_text;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

int failures = 0;

void report(int n, const std::string& title, Check& c,
            const std::string& summary) {
  std::cout << "criterion " << n << " " << (c.ok ? "PASS" : "FAIL") << ": "
            << title << " (" << (c.ok ? summary : c.detail.str()) << ")\n";
  if (!c.ok) ++failures;
}

mvs::runtime::ExecResult run(const std::string& file, bool cow,
                             bool move_opt) {
  return mvs::test::run_vm(read_text(corpus_path(file)), cow, move_opt);
}

std::optional<mvs::TypeError> type_error(const std::string& file) {
  try {
    mvs::check_source(read_text(corpus_path(file)));
  } catch (const mvs::TypeError& e) {
    return e;
  }
  return std::nullopt;
}

int cli_exit(const std::string& args) {
  std::string cmd =
      std::string(MVSL_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void corpus_fidelity() {
  Check c;
  for (auto [file, value] : {std::pair{"copy.mvs", "Pair(4, 2)"},
                             std::pair{"copy_q.mvs", "Pair(4, 8)"},
                             std::pair{"swap.mvs", "Pair(2, 4)"}}) {
    auto src = read_text(corpus_path(file));
    auto vm = mvs::test::run_vm(src).output;
    auto oracle = mvs::oracle::interpret_eager(mvs::check_source(src));
    c.expect(vm == value, std::string(file) + " vm gave " + vm);
    c.expect(oracle == value, std::string(file) + " oracle gave " + oracle);
  }
  for (auto file : {"let_mutation.mvs", "let_array_mutation.mvs"}) {
    auto e = type_error(file);
    c.expect(e && e->code() == mvs::TypeErrorCode::ImmutableTarget,
             std::string(file) + " not rejected with ImmutableTarget");
    if (e) {
      auto lc = mvs::line_col(read_text(corpus_path(file)), e->span().start);
      c.expect(lc.line == 5, std::string(file) + " wrong line " +
                                 std::to_string(lc.line));
    }
  }
  auto rec = type_error("recursive_struct.mvs");
  c.expect(rec && rec->code() == mvs::TypeErrorCode::RecursiveStruct,
           "A/B cycle not rejected");
  report(1, "corpus fidelity", c,
         "Pair(4, 2), Pair(4, 8), Pair(2, 4), ImmutableTarget at line 5 x2, "
         "RecursiveStruct");
}

std::vector<std::uint8_t> bytes_by_hand(std::int64_t v, std::size_t size) {
  std::uint64_t u = static_cast<std::uint64_t>(v);
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(static_cast<std::uint8_t>(u % 256));
    u /= 256;
  }
  return out;
}

void layout_reproduction() {
  using namespace mvs::runtime;
  Check c;
  auto l = serialize_array_layout({42, 1337}, 2, ByteOrder::Little);
  c.expect(l.r == 1 && l.n == 2 && l.k == 4 &&
               l.payload == std::vector<std::uint8_t>{42, 0, 57, 5},
           "[42, 1337] layout mismatch");
  std::mt19937_64 rng(2024);
  int arrays = 0;
  for (std::size_t size : {1u, 2u, 4u, 8u}) {
    std::int64_t bound = size == 8 ? INT64_MAX
                                   : (std::int64_t{1} << (8 * size - 1)) - 1;
    std::uniform_int_distribution<std::int64_t> value(-bound - 1, bound);
    std::uniform_int_distribution<std::size_t> length(0, 12);
    for (int i = 0; i < 100; ++i, ++arrays) {
      std::vector<std::int64_t> xs(length(rng));
      for (auto& x : xs) x = value(rng);
      auto got = serialize_array_layout(xs, size, ByteOrder::Little);
      std::vector<std::uint8_t> want;
      for (auto x : xs) {
        auto b = bytes_by_hand(x, size);
        want.insert(want.end(), b.begin(), b.end());
      }
      c.expect(got.n == xs.size() && got.k == xs.size() * size &&
                   got.payload == want,
               "size " + std::to_string(size) + " array " + std::to_string(i));
    }
  }
  report(2, "layout reproduction", c,
         "(1, 2, 4, [42, 0, 57, 5]); " + std::to_string(arrays) +
             " random arrays over sizes 1/2/4/8 match byte oracle");
}

void move_elision() {
  Check c;
  auto opt = run("copy_elide.mvs", true, true);
  auto naive = run("copy_elide.mvs", false, false);
  c.expect(opt.stats.deep_copies == 0, "optimized deep_copies " +
                                           std::to_string(opt.stats.deep_copies));
  c.expect(opt.stats.moves >= 2,
           "optimized moves " + std::to_string(opt.stats.moves));
  c.expect(naive.stats.deep_copies >= 2,
           "unoptimized deep_copies " + std::to_string(naive.stats.deep_copies));
  c.expect(opt.output == naive.output, "outputs differ");
  report(3, "move elision", c,
         "optimized deep_copies=0 moves=" + std::to_string(opt.stats.moves) +
             "; unoptimized (--no-move-opt --no-cow) deep_copies=" +
             std::to_string(naive.stats.deep_copies));
}

void cow_behavior() {
  Check c;
  auto skip = run("cow_not_taken.mvs", true, true);
  auto take = run("cow_taken.mvs", true, true);
  c.expect(skip.stats.cow_copies == 0 && skip.stats.retains == 1,
           "not taken: cow_copies " + std::to_string(skip.stats.cow_copies) +
               " retains " + std::to_string(skip.stats.retains));
  c.expect(take.stats.cow_copies == 1,
           "taken: cow_copies " + std::to_string(take.stats.cow_copies));
  for (auto [file, cow] : {std::pair{"cow_not_taken.mvs", &skip},
                           std::pair{"cow_taken.mvs", &take}}) {
    auto eager = run(file, false, true);
    c.expect(eager.stats.deep_copies >= 1,
             std::string(file) + " --no-cow deep_copies " +
                 std::to_string(eager.stats.deep_copies));
    c.expect(eager.output == cow->output,
             std::string(file) + " --no-cow output differs");
  }
  report(4, "copy-on-write", c,
         "not taken cow_copies=0 retains=1; taken cow_copies=1; --no-cow "
         "deep_copies>=1 with identical output");
}

// Criteria 5 and 6 share the same runs.
void equivalence_and_leaks() {
  Check equiv;
  Check leaks;
  auto start = std::chrono::steady_clock::now();
  std::size_t programs = 0;
  std::size_t runs = 0;
  auto check_report = [&](const mvs::oracle::DiffReport& r,
                          const std::string& name) {
    ++programs;
    equiv.expect(r.pass, name + " FAIL");
    for (const auto& o : r.results) {
      if (!o.stats || o.trap) continue;
      ++runs;
      leaks.expect(o.leak_free(), name + " " + o.config.name() + " leaks");
    }
  };
  std::size_t corpus_files = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(MVS_CORPUS_DIR)) {
    if (entry.path().extension() != ".mvs") continue;
    auto src = read_text(entry.path());
    std::optional<mvs::TypedProgram> typed;
    try {
      typed = mvs::check_source(src);
    } catch (const mvs::TypeError&) {
      continue;
    }
    ++corpus_files;
    check_report(mvs::oracle::differential_run(*typed, src),
                 entry.path().filename().string());
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    mvs::oracle::GenConfig config;
    config.seed = seed;
    config.size_budget = 50;
    auto src = mvs::oracle::generate_source(config);
    try {
      check_report(mvs::oracle::differential_run_source(src),
                   "seed " + std::to_string(seed));
    } catch (const std::exception& e) {
      equiv.expect(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  equiv.expect(secs < 120.0, "took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << programs << " programs (" << corpus_files
    << " type-correct corpus files + 1000 seeds) PASS in " << std::fixed
    << std::setprecision(1) << secs << " s";
  report(5, "oracle equivalence", equiv, s.str());
  report(6, "leak freedom", leaks,
         std::to_string(runs) +
             " non-trapping VM runs with allocs==frees and "
             "retains==releases");
}

void exclusivity() {
  Check c;
  auto e = type_error("swap_same_field.mvs");
  c.expect(e && e->code() == mvs::TypeErrorCode::OverlappingInout,
           "swap(&p.fs, &p.fs) not rejected statically");
  auto same = read_text(corpus_path("swap_same_index.mvs"));
  try {
    mvs::test::run_vm(same);
    c.expect(false, "i == j did not trap");
  } catch (const mvs::RuntimeTrap& t) {
    c.expect(t.kind() == mvs::TrapKind::OverlapViolation,
             "i == j trapped with the wrong kind");
  }
  int code = cli_exit("run " + corpus_path("swap_same_index.mvs"));
  c.expect(code == 2, "i == j exit code " + std::to_string(code));
  auto distinct = run("swap_distinct_index.mvs", true, true);
  c.expect(distinct.output == "[3, 2, 1]",
           "i != j gave " + distinct.output);
  report(7, "exclusivity", c,
         "OverlappingInout statically; OverlapViolation with exit 2 for "
         "i == j; i != j swaps");
}

void value_independence() {
  Check c;
  std::size_t mutated = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto cm = mvs::oracle::generate_copy_mutate(seed);
    auto expected = mvs::oracle::interpret_eager(mvs::check_source(cm.original));
    if (cm.program.find("q =") != std::string::npos ||
        cm.program.find("q[") != std::string::npos ||
        cm.program.find("&q") != std::string::npos) {
      ++mutated;
    }
    auto r = mvs::oracle::differential_run_source(cm.program);
    c.expect(r.pass, "seed " + std::to_string(seed) + " configs disagree");
    for (const auto& o : r.results) {
      c.expect(o.output == expected,
               "seed " + std::to_string(seed) + " " + o.config.name() +
                   " changed the original");
    }
  }
  report(8, "value independence", c,
         "200 copy-then-mutate programs (" + std::to_string(mutated) +
             " writing to the copy) print the original value under all "
             "configurations");
}

}  // namespace

int main() {
  corpus_fidelity();
  layout_reproduction();
  move_elision();
  cow_behavior();
  equivalence_and_leaks();
  exclusivity();
  value_independence();
  return failures == 0 ? 0 : 1;
}
