#include <benchmark/benchmark.h>

#include "mvs/oracle/generator.hpp"
#include "mvs/oracle/interpreter.hpp"
#include "mvs/pipeline.hpp"
#include "mvs/runtime/vm.hpp"

namespace {

// A large array copied once per iteration and mutated on one side.
const char* kArrayCopies = R"(
let touch = (xs: [Int], n: Int) -> Int {
  var ys = xs in
  _ = (if n < 0 then (ys[0] = n in 0) else 0) in
  ys[0] + ys[63]
} in
var a: [Int] = [
  0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15,
  16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31,
  32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47,
  48, 49, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60, 61, 62, 63] in
let s0 = touch(a, 1) in let s1 = touch(a, 2) in let s2 = touch(a, 3) in
let s3 = touch(a, 4) in let s4 = touch(a, 5) in let s5 = touch(a, 0 - 6) in
s0 + s1 + s2 + s3 + s4 + s5
)";

void run_program(benchmark::State& state, const char* source, bool cow,
                 bool move_opt) {
  auto typed = mvs::check_source(source);
  auto ir = mvs::compile(typed, move_opt);
  mvs::runtime::ExecOptions options;
  options.cow = cow;
  mvs::runtime::RuntimeStats stats;
  for (auto _ : state) {
    auto r = mvs::runtime::execute(ir, options);
    benchmark::DoNotOptimize(r.output);
    stats = r.stats;
  }
  state.counters["deep_copies"] = static_cast<double>(stats.deep_copies);
  state.counters["cow_copies"] = static_cast<double>(stats.cow_copies);
  state.counters["moves"] = static_cast<double>(stats.moves);
}

void BM_ArrayCopies(benchmark::State& state) {
  run_program(state, kArrayCopies, state.range(0) != 0, state.range(1) != 0);
}
BENCHMARK(BM_ArrayCopies)
    ->ArgNames({"cow", "move_opt"})
    ->Args({1, 1})
    ->Args({1, 0})
    ->Args({0, 1})
    ->Args({0, 0});

void BM_Oracle(benchmark::State& state) {
  auto typed = mvs::check_source(kArrayCopies);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvs::oracle::interpret_eager(typed));
  }
}
BENCHMARK(BM_Oracle);

void BM_GeneratedPrograms(benchmark::State& state) {
  std::vector<mvs::ir::IRProgram> programs;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    mvs::oracle::GenConfig config;
    config.seed = seed;
    programs.push_back(mvs::compile(
        mvs::check_source(mvs::oracle::generate_source(config)),
        state.range(1) != 0));
  }
  mvs::runtime::ExecOptions options;
  options.cow = state.range(0) != 0;
  for (auto _ : state) {
    for (const auto& ir : programs) {
      benchmark::DoNotOptimize(mvs::runtime::execute(ir, options));
    }
  }
}
BENCHMARK(BM_GeneratedPrograms)
    ->ArgNames({"cow", "move_opt"})
    ->Args({1, 1})
    ->Args({0, 0});

void BM_Compile(benchmark::State& state) {
  mvs::oracle::GenConfig config;
  config.seed = 7;
  config.size_budget = 200;
  auto source = mvs::oracle::generate_source(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvs::compile(mvs::check_source(source)));
  }
}
BENCHMARK(BM_Compile);

}  // namespace

BENCHMARK_MAIN();
