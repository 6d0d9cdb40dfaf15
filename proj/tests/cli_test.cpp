#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "support.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome mvsl(const std::string& args) {
  std::string cmd = std::string(MVSL_PATH) + " " + args + " 2>/dev/null";
  Outcome result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string stderr_of(const std::string& args) {
  std::string cmd = std::string(MVSL_PATH) + " " + args + " 2>&1 >/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  pclose(pipe);
  return out;
}

TEST(Cli, CorpusGolden) {
  for (const auto& entry :
       std::filesystem::directory_iterator(MVS_CORPUS_DIR)) {
    if (entry.path().extension() != ".mvs") continue;
    SCOPED_TRACE(entry.path().string());
    auto expected = mvs::test::read_text(
        std::filesystem::path(entry.path()).replace_extension(".expected"));
    auto newline = expected.find('\n');
    int code = std::stoi(expected.substr(5, newline - 5));
    auto body = expected.substr(newline + 1);
    auto run = mvsl("run " + entry.path().string());
    EXPECT_EQ(run.code, code);
    if (code == 0) {
      EXPECT_EQ(run.out, body);
      EXPECT_EQ(mvsl("run --oracle " + entry.path().string()).out, body);
    } else {
      auto err = stderr_of("run " + entry.path().string());
      auto code_name = body.substr(0, body.find(' '));
      auto pos = body.substr(body.find(' ') + 1);
      pos.pop_back();
      EXPECT_EQ(err.rfind(pos + ": error[" + code_name + "]", 0), 0u) << err;
    }
  }
}

TEST(Cli, CheckPrintsOk) {
  auto r = mvsl("check " + mvs::test::corpus_path("swap.mvs"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok\n");
  EXPECT_EQ(mvsl("check " + mvs::test::corpus_path("let_mutation.mvs")).code,
            1);
}

TEST(Cli, StatsGoToStderr) {
  auto path = mvs::test::corpus_path("copy_elide.mvs");
  auto r = mvsl("run --stats " + path);
  EXPECT_EQ(r.out, "3\n");
  auto err = stderr_of("run --stats " + path);
  EXPECT_NE(err.find("\"deep_copies\":0"), std::string::npos) << err;
  auto naive = stderr_of("run --stats --no-move-opt --no-cow " + path);
  EXPECT_NE(naive.find("\"deep_copies\":2"), std::string::npos) << naive;
}

TEST(Cli, Dumps) {
  auto path = mvs::test::corpus_path("closure.mvs");
  EXPECT_NE(mvsl("check --dump=ir " + path).out.find("routine"),
            std::string::npos);
  EXPECT_NE(mvsl("check --dump=types " + path).out.find("entry: Int"),
            std::string::npos);
  EXPECT_NE(mvsl("check --dump=ast " + path).out.find("var foo"),
            std::string::npos);
  EXPECT_EQ(mvsl("run --dump=ir " + path).out, "43\n");
}

TEST(Cli, DiffModes) {
  auto r = mvsl("diff " + mvs::test::corpus_path("swap.mvs"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"status\":\"PASS\""), std::string::npos);
  auto gen = mvsl("diff --seed=5 --trials=3");
  EXPECT_EQ(gen.code, 0);
  EXPECT_EQ(std::count(gen.out.begin(), gen.out.end(), '\n'), 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(mvsl("").code, 4);
  EXPECT_EQ(mvsl("run").code, 4);
  EXPECT_EQ(mvsl("run /nonexistent.mvs").code, 4);
  EXPECT_EQ(mvsl("run --dump=bytecode x.mvs").code, 4);
  EXPECT_EQ(mvsl("diff").code, 4);
}

}  // namespace
