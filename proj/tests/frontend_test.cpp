#include <gtest/gtest.h>

#include <filesystem>

#include "mvs/lexer.hpp"
#include "mvs/parser.hpp"
#include "mvs/oracle/generator.hpp"
#include "support.hpp"

namespace {

using mvs::TokenKind;

TEST(Lexer, ClassifiesTokens) {
  auto tokens = mvs::tokenize("var x: [Int] = [1, 2.5] in f(&x[0]) -> _");
  std::vector<TokenKind> kinds;
  for (const auto& t : tokens) kinds.push_back(t.kind);
  EXPECT_EQ(tokens.front().kind, TokenKind::Keyword);
  EXPECT_EQ(tokens[1].kind, TokenKind::Identifier);
  EXPECT_EQ(tokens.back().kind, TokenKind::End);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), TokenKind::FloatLiteral),
            kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), TokenKind::Ampersand),
            kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), TokenKind::Arrow),
            kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), TokenKind::Underscore),
            kinds.end());
}

TEST(Lexer, SpansPointIntoSource) {
  std::string src = "let  abc = 1 in abc";
  auto tokens = mvs::tokenize(src);
  EXPECT_EQ(tokens[1].lexeme, "abc");
  EXPECT_EQ(tokens[1].span.start, 5u);
}

TEST(Lexer, RejectsStrayCharacter) {
  EXPECT_THROW(mvs::tokenize("let x = 1 $ 2 in x"), mvs::SyntaxError);
}

TEST(Parser, ParsesStructsAndEntry) {
  auto p = mvs::parse_source(
      "struct Pair { var fs: Int; let sn: Float } in Pair(1, 2.0)");
  ASSERT_EQ(p.structs.size(), 1u);
  EXPECT_EQ(p.structs[0].name, "Pair");
  ASSERT_EQ(p.structs[0].fields.size(), 2u);
  EXPECT_EQ(p.structs[0].fields[1].mutability, mvs::Mutability::Let);
  EXPECT_TRUE(p.entry->is<mvs::StructInit>());
}

TEST(Parser, BinaryPrecedence) {
  auto p = mvs::parse_source("1 + 2 * 3 < 4");
  ASSERT_TRUE(p.entry->is<mvs::Binary>());
  const auto& top = p.entry->as<mvs::Binary>();
  EXPECT_EQ(top.op, mvs::BinaryOp::Lt);
}

TEST(Parser, ReportsPosition) {
  std::string src = "let x = in x";
  try {
    mvs::parse_source(src);
    FAIL() << "expected SyntaxError";
  } catch (const mvs::SyntaxError& e) {
    EXPECT_EQ(e.span().start, 8u);
  }
}

TEST(Parser, DuplicateFieldIsRejected) {
  EXPECT_THROW(mvs::parse_source("struct A { var x: Int; var x: Int } in 0"),
               mvs::SyntaxError);
}

TEST(Printer, RoundTripsCorpus) {
  for (const auto& entry :
       std::filesystem::directory_iterator(MVS_CORPUS_DIR)) {
    if (entry.path().extension() != ".mvs") continue;
    SCOPED_TRACE(entry.path().string());
    auto first = mvs::parse_source(mvs::test::read_text(entry.path()));
    auto printed = mvs::print_program(first);
    auto second = mvs::parse_source(printed);
    EXPECT_TRUE(mvs::structurally_equal(first, second)) << printed;
    EXPECT_EQ(mvs::print_program(second), printed);
  }
}

TEST(Printer, RoundTripsGeneratedPrograms) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    mvs::oracle::GenConfig config;
    config.seed = seed;
    auto first = mvs::parse_source(mvs::oracle::generate_source(config));
    auto second = mvs::parse_source(mvs::print_program(first));
    EXPECT_TRUE(mvs::structurally_equal(first, second)) << "seed " << seed;
  }
}

}  // namespace
