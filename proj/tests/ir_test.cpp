#include <gtest/gtest.h>

#include "mvs/ir.hpp"
#include "mvs/pipeline.hpp"

namespace {

using mvs::Type;
using mvs::ir::Opcode;

std::size_t count_ops(const mvs::ir::IRProgram& ir, Opcode op) {
  std::size_t n = 0;
  for (const auto& r : ir.routines) {
    for (const auto& b : r.blocks) {
      for (const auto& inst : b.instructions) n += inst.op == op;
    }
  }
  return n;
}

TEST(Metatype, Scalars) {
  mvs::StructTable table;
  auto m = mvs::ir::synthesize_metatype(Type::integer(), table);
  EXPECT_TRUE(m.trivial);
  EXPECT_EQ(m.size_bytes, 8u);
  EXPECT_EQ(m.copy_routine, mvs::ir::kBitwiseCopy);
  EXPECT_EQ(m.destroy_routine, mvs::ir::kNoopDestroy);
}

TEST(Metatype, StructsAndArrays) {
  auto typed = mvs::check_source(
      "struct P { var a: Int; var b: Float } in "
      "struct Q { var p: P; var xs: [P] } in 0");
  std::map<std::string, mvs::ir::SynthesizedRoutine> routines;
  auto p = mvs::ir::synthesize_metatype(Type::structure("P"), typed.structs,
                                        &routines);
  EXPECT_TRUE(p.trivial);
  EXPECT_EQ(p.size_bytes, 16u);
  auto q = mvs::ir::synthesize_metatype(Type::structure("Q"), typed.structs,
                                        &routines);
  EXPECT_FALSE(q.trivial);
  EXPECT_EQ(q.size_bytes, 24u);
  EXPECT_EQ(q.copy_routine, "copy<Q>");
  EXPECT_TRUE(routines.count("copy<Q>"));
  EXPECT_TRUE(routines.count("destroy<[P]>"));
  auto f = mvs::ir::synthesize_metatype(
      Type::function({}, Type::integer()), typed.structs);
  EXPECT_FALSE(f.trivial);
  EXPECT_EQ(f.size_bytes, 32u);
}

TEST(Lowering, ClosuresBecomeRoutines) {
  auto typed = mvs::check_source(
      "var foo = 42 in let f = () -> Int { foo + 1 } in f()");
  auto ir = mvs::compile(typed, false);
  ASSERT_EQ(ir.routines.size(), 2u);
  const auto& body = ir.routines[1 - ir.entry];
  EXPECT_NE(body.env, mvs::ir::kNoSlot);
  EXPECT_EQ(count_ops(ir, Opcode::MakeClosure), 1u);
  EXPECT_GE(count_ops(ir, Opcode::LoadEnv), 1u);
}

TEST(Lowering, InoutCallsResolveAndCheck) {
  auto typed = mvs::check_source(
      "let f = (x: inout Int, y: inout Int) -> Int { 0 } in "
      "var a = [1, 2] in let i = 0 in f(&a[i], &a[1])");
  auto ir = mvs::compile(typed, false);
  EXPECT_EQ(count_ops(ir, Opcode::ResolveLocation), 2u);
  EXPECT_EQ(count_ops(ir, Opcode::OverlapCheck), 1u);
}

TEST(Lowering, StaticallyDisjointArgumentsSkipCheck) {
  auto typed = mvs::check_source(
      "struct P { var a: Int; var b: Int } in "
      "let f = (x: inout Int, y: inout Int) -> Int { 0 } in "
      "var p = P(1, 2) in f(&p.a, &p.b)");
  auto ir = mvs::compile(typed, false);
  EXPECT_EQ(count_ops(ir, Opcode::OverlapCheck), 0u);
}

TEST(MoveOpt, LastUseCopiesBecomeMoves) {
  auto typed = mvs::check_source(
      "let f = (a: [Int]) -> Int { a[0] + a[1] } in "
      "let x: [Int] = [1, 2] in f(x)");
  auto plain = mvs::compile(typed, false);
  auto opt = mvs::compile(typed, true);
  EXPECT_GE(count_ops(plain, Opcode::Copy), 2u);
  EXPECT_EQ(count_ops(opt, Opcode::Copy), 0u);
  EXPECT_GT(count_ops(opt, Opcode::Move), count_ops(plain, Opcode::Move));
}

TEST(MoveOpt, CopyBeforeLaterUseIsKept) {
  auto typed = mvs::check_source(
      "var a = [1, 2] in var b = a in b[0] = 5 in a");
  auto opt = mvs::compile(typed, true);
  EXPECT_GE(count_ops(opt, Opcode::Copy), 1u);
}

TEST(Verifier, AcceptsLoweredPrograms) {
  auto typed = mvs::check_source(
      "struct P { var a: [Int] } in var p = P([1]) in "
      "let g = (x: inout P) -> Int { x.a[0] = 2 in 0 } in "
      "_ = (if 1 then g(&p) else 0) in p");
  EXPECT_TRUE(mvs::ir::verify_linearity(mvs::ir::lower_program(typed)).empty());
  EXPECT_TRUE(mvs::ir::verify_linearity(
                  mvs::ir::apply_move_optimization(
                      mvs::ir::lower_program(typed)))
                  .empty());
}

TEST(Verifier, DetectsLeakAndDoubleConsume) {
  auto typed = mvs::check_source("var a = [1, 2] in var b = a in 0");
  auto ir = mvs::ir::lower_program(typed);
  auto& insts = ir.routines[ir.entry].blocks[0].instructions;

  auto leaky = ir;
  auto& li = leaky.routines[leaky.entry].blocks[0].instructions;
  auto it = std::find_if(li.begin(), li.end(), [](const auto& i) {
    return i.op == Opcode::Destroy;
  });
  ASSERT_NE(it, li.end());
  li.erase(it);
  EXPECT_FALSE(mvs::ir::verify_linearity(leaky).empty());

  auto twice = ir;
  auto& ti = twice.routines[twice.entry].blocks[0].instructions;
  auto d = std::find_if(ti.begin(), ti.end(), [](const auto& i) {
    return i.op == Opcode::Destroy;
  });
  ti.insert(d, *d);
  EXPECT_FALSE(mvs::ir::verify_linearity(twice).empty());
  EXPECT_FALSE(insts.empty());
}

TEST(IrDump, ListsRoutinesAndMetatypes) {
  auto ir = mvs::compile(mvs::check_source("let f = () -> Int { 1 } in f()"));
  auto text = mvs::ir::dump_ir(ir);
  EXPECT_NE(text.find("[entry]"), std::string::npos);
  EXPECT_NE(text.find("metatypes:"), std::string::npos);
  EXPECT_NE(text.find("make_closure"), std::string::npos);
}

}  // namespace
