#include <gtest/gtest.h>

#include "mvs/oracle/differential.hpp"
#include "mvs/oracle/generator.hpp"
#include "mvs/oracle/interpreter.hpp"
#include "mvs/parser.hpp"
#include "support.hpp"

namespace {

using namespace mvs::oracle;

std::string oracle_run(std::string_view src) {
  return interpret_eager(mvs::check_source(src));
}

TEST(Oracle, CorpusListings) {
  using mvs::test::corpus_path;
  using mvs::test::read_text;
  EXPECT_EQ(oracle_run(read_text(corpus_path("copy.mvs"))), "Pair(4, 2)");
  EXPECT_EQ(oracle_run(read_text(corpus_path("copy_q.mvs"))), "Pair(4, 8)");
  EXPECT_EQ(oracle_run(read_text(corpus_path("swap.mvs"))), "Pair(2, 4)");
}

TEST(Oracle, CopyInCopyOut) {
  EXPECT_EQ(oracle_run("var a = [1, 2] in "
                       "let f = (x: inout Int, y: inout Int) -> Int "
                       "{ x = x + 10 in y = y + 20 in 0 } in "
                       "_ = f(&a[0], &a[1]) in a"),
            "[11, 22]");
}

TEST(Oracle, OverlapStillTraps) {
  try {
    oracle_run(mvs::test::read_text(
        mvs::test::corpus_path("swap_same_index.mvs")));
    FAIL();
  } catch (const mvs::RuntimeTrap& t) {
    EXPECT_EQ(t.kind(), mvs::TrapKind::OverlapViolation);
  }
}

TEST(Generator, Deterministic) {
  GenConfig config;
  config.seed = 42;
  EXPECT_EQ(generate_source(config), generate_source(config));
  config.seed = 43;
  GenConfig other = config;
  other.seed = 44;
  EXPECT_NE(generate_source(config), generate_source(other));
}

TEST(Generator, MinimalBudgetIsALiteral) {
  GenConfig config;
  config.size_budget = 1;
  auto program = generate_program(config);
  EXPECT_TRUE(program.structs.empty());
  EXPECT_TRUE(program.entry->is<mvs::IntLit>());
}

TEST(Generator, ProgramsTypeCheck) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig config;
    config.seed = seed;
    config.enable_closures = seed % 3 != 0;
    config.enable_inout = seed % 5 != 0;
    auto src = generate_source(config);
    EXPECT_NO_THROW(mvs::check_source(src)) << src;
  }
}

TEST(Generator, CopyMutateKeepsOriginal) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto c = generate_copy_mutate(seed);
    auto expected = oracle_run(c.original);
    EXPECT_EQ(mvs::test::run_vm(c.program).output, expected) << c.program;
    EXPECT_EQ(mvs::test::run_vm(c.program, false, false).output, expected);
  }
}

TEST(Differential, SwapPasses) {
  auto report = differential_run_source(
      mvs::test::read_text(mvs::test::corpus_path("swap.mvs")));
  EXPECT_TRUE(report.pass);
  ASSERT_EQ(report.results.size(), 5u);
  for (const auto& r : report.results) {
    EXPECT_EQ(r.output, "Pair(2, 4)") << r.config.name();
    EXPECT_TRUE(r.leak_free());
  }
  EXPECT_NE(report.to_json().find("\"status\":\"PASS\""), std::string::npos);
}

TEST(Differential, TrapParity) {
  auto report = differential_run_source(
      mvs::test::read_text(mvs::test::corpus_path("swap_same_index.mvs")));
  EXPECT_TRUE(report.pass);
  for (const auto& r : report.results) {
    ASSERT_TRUE(r.trap.has_value());
    EXPECT_NE(r.trap->find("OverlapViolation"), std::string::npos);
  }
}

TEST(Differential, CopyElisionCounters) {
  auto report = differential_run_source(
      mvs::test::read_text(mvs::test::corpus_path("copy_elide.mvs")));
  EXPECT_TRUE(report.pass);
  for (const auto& r : report.results) {
    if (r.config.oracle) continue;
    if (r.config.move_opt) {
      EXPECT_EQ(r.stats->deep_copies, 0u);
    } else if (!r.config.cow) {
      EXPECT_GE(r.stats->deep_copies, 2u);
    }
  }
}

TEST(Differential, DetectsDisagreement) {
  DiffReport report;
  RunOutcome a;
  a.output = "1";
  RunOutcome b;
  b.output = "2";
  report.results = {a, b};
  report.pass = false;
  EXPECT_NE(report.to_json().find("FAIL"), std::string::npos);
}

TEST(Differential, GeneratedProperties) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig config;
    config.seed = seed;
    auto report = differential_run_source(generate_source(config),
                                          DiffOptions{true});
    EXPECT_TRUE(report.pass) << report.to_json();
    std::optional<std::uint64_t> on, off;
    for (const auto& r : report.results) {
      if (!r.stats) continue;
      EXPECT_LE(r.stats->cow_copies, r.stats->retains);
      if (!r.config.cow) (r.config.move_opt ? on : off) = r.stats->deep_copies;
    }
    ASSERT_TRUE(on && off);
    EXPECT_LE(*on, *off);
  }
}

}  // namespace
