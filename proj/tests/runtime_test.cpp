#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "mvs/runtime/arith.hpp"
#include "mvs/runtime/layout.hpp"
#include "mvs/runtime/location.hpp"
#include "mvs/runtime/store.hpp"
#include "support.hpp"

namespace {

using namespace mvs::runtime;

Value int_value(std::int64_t v) { return Value{v}; }

TEST(Store, CowCopyRetainsAndUniquesOnWrite) {
  Store store(true);
  auto id = store.allocate_array({int_value(1), int_value(2)}, 8);
  Value a{ArrayValue{id}};
  Value b = store.copy_value(a);
  EXPECT_EQ(b.as<ArrayValue>().id, id);
  EXPECT_EQ(store.array(id).r, 2u);
  EXPECT_EQ(store.stats().retains, 1u);

  EXPECT_TRUE(store.make_unique(b.as<ArrayValue>()));
  EXPECT_NE(b.as<ArrayValue>().id, id);
  EXPECT_EQ(store.array(id).r, 1u);
  EXPECT_EQ(store.stats().cow_copies, 1u);
  EXPECT_FALSE(store.make_unique(b.as<ArrayValue>()));

  store.destroy_value(a);
  store.destroy_value(b);
  EXPECT_TRUE(store.empty());
  EXPECT_EQ(store.stats().allocs, store.stats().frees);
  EXPECT_EQ(store.stats().retains, store.stats().releases);
}

TEST(Store, EagerCopyDuplicatesNestedArrays) {
  Store store(false);
  auto inner = store.allocate_array({int_value(7)}, 8);
  auto outer = store.allocate_array({Value{ArrayValue{inner}}}, 8);
  Value a{ArrayValue{outer}};
  Value b = store.copy_value(a);
  EXPECT_NE(b.as<ArrayValue>().id, outer);
  EXPECT_EQ(store.live_arrays(), 4u);
  EXPECT_EQ(store.stats().deep_copies, 2u);
  EXPECT_EQ(store.stats().retains, 0u);
  store.destroy_value(a);
  store.destroy_value(b);
  EXPECT_TRUE(store.empty());
}

TEST(Store, FormatsValues) {
  Store store(true);
  mvs::StructTable table(
      {mvs::StructDecl{"P", {mvs::FieldDecl{mvs::Mutability::Var, "x",
                                            mvs::Type::integer(), {}},
                             mvs::FieldDecl{mvs::Mutability::Var, "y",
                                            mvs::Type::floating(), {}}}}});
  auto id = store.allocate_array(
      {Value{StructValue{0, {int_value(1), Value{2.0}}}}}, 16);
  Value v{ArrayValue{id}};
  EXPECT_EQ(format_value(v, store, table), "[P(1, 2.0)]");
  store.destroy_value(v);
  EXPECT_EQ(format_float(0.75), "0.75");
  EXPECT_EQ(format_float(-3), "-3.0");
  EXPECT_EQ(format_float(1e300 * 1e10), "inf");
}

// Little-endian bytes of a two's-complement value, one base-256 digit at a
// time.
std::vector<std::uint8_t> bytes_by_hand(std::int64_t v, std::size_t size) {
  std::uint64_t u = static_cast<std::uint64_t>(v);
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(static_cast<std::uint8_t>(u % 256));
    u /= 256;
  }
  return out;
}

TEST(Layout, KnownArray) {
  auto layout = serialize_array_layout({42, 1337}, 2, ByteOrder::Little);
  EXPECT_EQ(layout.r, 1u);
  EXPECT_EQ(layout.n, 2u);
  EXPECT_EQ(layout.k, 4u);
  EXPECT_EQ(layout.payload, (std::vector<std::uint8_t>{42, 0, 57, 5}));
  auto big = serialize_array_layout({42, 1337}, 2, ByteOrder::Big);
  EXPECT_EQ(big.payload, (std::vector<std::uint8_t>{0, 42, 5, 57}));
}

TEST(Layout, RandomArraysMatchByteOracle) {
  std::mt19937_64 rng(7);
  for (std::size_t size : {1u, 2u, 4u, 8u}) {
    std::int64_t lo = size == 8 ? std::numeric_limits<std::int64_t>::min()
                                : -(std::int64_t{1} << (8 * size - 1));
    std::int64_t hi = size == 8 ? std::numeric_limits<std::int64_t>::max()
                                : (std::int64_t{1} << (8 * size - 1)) - 1;
    std::uniform_int_distribution<std::int64_t> value(lo, hi);
    std::uniform_int_distribution<std::size_t> length(0, 16);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<std::int64_t> xs(length(rng));
      for (auto& x : xs) x = value(rng);
      auto layout = serialize_array_layout(xs, size, ByteOrder::Little);
      std::vector<std::uint8_t> expected;
      for (auto x : xs) {
        auto b = bytes_by_hand(x, size);
        expected.insert(expected.end(), b.begin(), b.end());
      }
      EXPECT_EQ(layout.n, xs.size());
      EXPECT_EQ(layout.k, xs.size() * size);
      EXPECT_EQ(layout.payload, expected);
    }
  }
}

TEST(Layout, RejectsBadInput) {
  EXPECT_THROW(serialize_array_layout({1}, 3, ByteOrder::Little),
               std::invalid_argument);
  EXPECT_THROW(serialize_array_layout({128}, 1, ByteOrder::Little),
               std::invalid_argument);
  EXPECT_NO_THROW(serialize_array_layout({-128}, 1, ByteOrder::Little));
}

TEST(Arith, CheckedIntegerOperations) {
  using mvs::BinaryOp;
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(apply_int(BinaryOp::Div, -7, 2, {}), -3);
  EXPECT_EQ(apply_int(BinaryOp::Rem, -7, 2, {}), -1);
  EXPECT_EQ(apply_int(BinaryOp::Rem, kMin, -1, {}), 0);
  EXPECT_EQ(apply_int(BinaryOp::Lt, 1, 2, {}), 1);
  auto trap_kind = [](auto f) {
    try {
      f();
    } catch (const mvs::RuntimeTrap& t) {
      return t.kind();
    }
    return mvs::TrapKind::StackOverflow;
  };
  EXPECT_EQ(trap_kind([&] { apply_int(BinaryOp::Add, kMax, 1, {}); }),
            mvs::TrapKind::IntegerOverflow);
  EXPECT_EQ(trap_kind([&] { apply_int(BinaryOp::Div, kMin, -1, {}); }),
            mvs::TrapKind::IntegerOverflow);
  EXPECT_EQ(trap_kind([&] { apply_int(BinaryOp::Rem, 1, 0, {}); }),
            mvs::TrapKind::DivisionByZero);
}

TEST(Arith, FloatsFollowIeee) {
  auto q = apply_float(mvs::BinaryOp::Div, 1.0, 0.0);
  ASSERT_TRUE(std::holds_alternative<double>(q));
  EXPECT_TRUE(std::isinf(std::get<double>(q)));
  auto c = apply_float(mvs::BinaryOp::Ge, 2.0, 1.0);
  EXPECT_EQ(std::get<std::int64_t>(c), 1);
}

TEST(Location, PrefixPathsOverlap) {
  Location a;
  a.path = {{false, 0}, {true, 2}};
  Location b = a;
  b.path = {{false, 0}};
  Location c = a;
  c.path = {{false, 0}, {true, 3}};
  Location d = a;
  d.root_slot = 4;
  EXPECT_TRUE(locations_overlap(a, b));
  EXPECT_FALSE(locations_overlap(a, c));
  EXPECT_FALSE(locations_overlap(a, d));
  EXPECT_THROW(check_dynamic_overlap(a, b, {}), mvs::RuntimeTrap);
}

TEST(Vm, CorpusValues) {
  EXPECT_EQ(mvs::test::run_vm(
                mvs::test::read_text(mvs::test::corpus_path("swap.mvs")))
                .output,
            "Pair(2, 4)");
  EXPECT_EQ(mvs::test::run_vm(
                mvs::test::read_text(mvs::test::corpus_path("closure.mvs")))
                .output,
            "43");
}

TEST(Vm, ClosureStateDoesNotPersistAcrossCalls) {
  auto r = mvs::test::run_vm(
      "var n = 0 in let f = () -> Int { n = n + 1 in n } in "
      "let a = f() in let b = f() in [a, b, n]");
  EXPECT_EQ(r.output, "[1, 1, 0]");
}

TEST(Vm, InoutMutatesCallerInPlace) {
  auto r = mvs::test::run_vm(
      "struct P { var a: [Int] } in var p = P([1, 2]) in "
      "let g = (x: inout [Int]) -> Int { x[1] = 9 in 0 } in "
      "_ = g(&p.a) in p");
  EXPECT_EQ(r.output, "P([1, 9])");
  EXPECT_TRUE(r.store_empty);
}

TEST(Vm, TrapsCarrySpans) {
  std::string src = "var a = [1] in\na[3]";
  try {
    mvs::test::run_vm(src);
    FAIL();
  } catch (const mvs::RuntimeTrap& t) {
    EXPECT_EQ(t.kind(), mvs::TrapKind::IndexOutOfBounds);
    EXPECT_EQ(mvs::line_col(src, t.span().start).line, 2u);
  }
}

TEST(Vm, CallDepthLimitTraps) {
  auto typed = mvs::check_source(
      "let f = (n: Int) -> Int { n } in "
      "let g = (n: Int) -> Int { f(n) } in "
      "let h = (n: Int) -> Int { g(n) } in h(3)");
  auto ir = mvs::compile(typed);
  ExecOptions options;
  EXPECT_EQ(execute(ir, options).output, "3");
  options.max_call_depth = 2;
  try {
    execute(ir, options);
    FAIL();
  } catch (const mvs::RuntimeTrap& t) {
    EXPECT_EQ(t.kind(), mvs::TrapKind::StackOverflow);
  }
}

TEST(Vm, StatsAreBalanced) {
  for (bool cow : {true, false}) {
    for (bool opt : {true, false}) {
      auto r = mvs::test::run_vm(
          mvs::test::read_text(mvs::test::corpus_path("nested_cow.mvs")), cow,
          opt);
      EXPECT_EQ(r.output, "[3, 30, 2]");
      EXPECT_EQ(r.stats.allocs, r.stats.frees);
      EXPECT_EQ(r.stats.retains, r.stats.releases);
    }
  }
}

}  // namespace
