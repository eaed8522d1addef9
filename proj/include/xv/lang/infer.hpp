#pragma once

// Qualified-type inference for the surface language. Builtins that need
// evidence (inj, inj', ?, prj) record their predicate per expression node;
// references to top-level lets record their instantiation. Both are
// normalised by the final substitution of the enclosing declaration so the
// evaluator can specialise them at ground types.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "xv/defaulting.hpp"
#include "xv/lang/ast.hpp"
#include "xv/solver.hpp"
#include "xv/types.hpp"

namespace xv::lang {

struct TypeError : std::runtime_error {
  TypeError(Pos p, const std::string& msg);
  Pos pos;
};

struct CheckOptions {
  SolverConfig solver;
  bool defaulting = true;
  bool expose_constructors = false;
  // Leave main's ambiguous variables uninstantiated instead of defaulting
  // or reporting them (used to enumerate instantiations externally).
  bool allow_ambiguous_main = false;
};

struct NodeInfo {
  std::optional<Pred> pred;
  int let_index = -1;
  bool self_ref = false;
  std::vector<std::pair<std::string, Type>> inst;
  // Let expressions: variables generalised at the binding.
  std::vector<std::string> generic;
};

struct LetInfo {
  std::string name;
  Scheme scheme;
  const LetDecl* decl = nullptr;
  bool recursive = false;
};

struct MainInfo {
  Type type = Type::int_t();
  std::vector<Pred> preds;
  std::set<std::string> ambiguous;
};

// Holds pointers into `prog`; move-only.
struct CheckedProgram {
  CheckedProgram() = default;
  CheckedProgram(CheckedProgram&&) = default;
  CheckedProgram& operator=(CheckedProgram&&) = default;
  CheckedProgram(const CheckedProgram&) = delete;

  Program prog;
  CheckOptions opts;
  std::map<std::string, const DataDecl*> functors;
  std::map<std::string, const DataDecl*> ctors;
  std::map<std::string, Type> aliases;
  std::vector<DefaultDecl> defaults;
  std::vector<LetInfo> lets;
  std::map<std::string, int> let_index;
  std::optional<MainInfo> main;
  std::unordered_map<int, NodeInfo> nodes;
};

// Throws SyntaxError-free errors only: TypeError, AmbiguityError,
// ConflictError, ResidualError.
CheckedProgram check_program(Program prog, const CheckOptions& opts);

// Resolves a closed surface type (aliases and declared functors only).
Type resolve_closed_type(const CheckedProgram& cp, const TypeAst& t);

// `name : forall a b. (P1, P2) => T`, variables renamed by first
// occurrence (body, then predicates) and predicates sorted.
std::string format_scheme(const std::string& name, const Scheme& s);
std::string format_type_canonical(const Type& t);

}  // namespace xv::lang
