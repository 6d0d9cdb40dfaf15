#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvs/ast.hpp"

namespace mvs {

/// Declared structures by name, in declaration order.
class StructTable {
 public:
  StructTable() = default;
  explicit StructTable(std::vector<StructDecl> decls);

  const StructDecl* find(std::string_view name) const;
  const StructDecl& at(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  const std::vector<StructDecl>& decls() const { return decls_; }
  std::size_t size() const { return decls_.size(); }

 private:
  std::vector<StructDecl> decls_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Builds the struct table and rejects declarations whose field types refer
/// to unknown structures or form a dependency cycle. Function-typed fields do
/// not store values inline and are exempt from the cycle check.
StructTable check_struct_table(const std::vector<StructDecl>& structs);

struct TypedProgram {
  Program program;
  StructTable structs;
  Type entry_type() const { return program.entry->type; }
};

/// Annotates every expression with its type and fills captures and
/// may-overlap pairs. Throws TypeError on the first violation.
TypedProgram check_program(Program program);

struct PathStep {
  enum class Kind { Field, IndexLiteral, IndexDynamic };
  Kind kind = Kind::Field;
  std::string field;
  std::int64_t literal = 0;
};

struct AccessPathShape {
  std::string root;
  std::vector<PathStep> steps;
};

AccessPathShape shape_of(const PathExpr& path);

enum class Overlap { Disjoint, Overlap, MaybeOverlap };

std::string_view to_string(Overlap overlap);

/// Total and symmetric. Disjoint when some common step provably differs,
/// Overlap when one path is a prefix of the other with provably equal
/// common steps, MaybeOverlap when only dynamic indices keep them apart.
Overlap paths_overlap(const AccessPathShape& a, const AccessPathShape& b);

}  // namespace mvs
