#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/types.hpp"

namespace xv::lang {

struct Pos {
  int line = 1;
  int col = 1;
};

std::string to_string(const Pos& p);

struct SyntaxError : std::runtime_error {
  SyntaxError(Pos p, const std::string& msg);
  Pos pos;
};

// Surface type syntax, resolved against declarations by the checker.
struct TypeAst {
  enum class Tag { Name, Var, Coprod, Fix, Fun, Int, Bool, Pair, App };
  Tag tag = Tag::Name;
  std::string name;
  std::vector<TypeAst> args;
  Pos pos;
};

struct PredAst {
  PredKind kind = PredKind::In;
  std::vector<TypeAst> args;
  // MinusP written without "= h".
  bool open_output = false;
  Pos pos;
};

struct SchemeAst {
  std::vector<std::string> vars;  // explicit forall list (may be empty)
  std::vector<PredAst> preds;
  TypeAst body;
};

struct Pattern {
  enum class Tag { Var, Wild, Con, In, Inl, Inr };
  Tag tag = Tag::Wild;
  std::string name;  // variable or constructor name
  std::vector<Pattern> subs;
  Pos pos;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Tag { Int, Bool, Var, App, Lam, Let, Pair, BinOp, Ann };
  Tag tag = Tag::Int;
  Pos pos;
  int id = 0;  // unique per program
  long long ival = 0;
  bool bval = false;
  std::string name;  // Var name, BinOp operator ("+", "*", "?", ".?."), Let binder
  std::vector<ExprPtr> kids;
  std::vector<Pattern> params;  // Lam
  std::optional<TypeAst> ann;   // Ann
};

enum class FieldKind { Self, Int, Bool };

struct DataDecl {
  std::string functor;
  std::string ctor;
  std::vector<FieldKind> fields;
  Pos pos;
};

struct TypeAlias {
  std::string name;
  TypeAst type;
  Pos pos;
};

struct DefaultAst {
  PredAst pattern;  // T :-: g = h, T is the template
  std::string text;
  Pos pos;
};

struct LetDecl {
  std::string name;
  std::optional<SchemeAst> sig;
  ExprPtr body;
  Pos pos;
};

struct MainDecl {
  ExprPtr body;
  Pos pos;
};

struct Program {
  std::vector<DataDecl> datas;
  std::vector<TypeAlias> aliases;
  std::vector<DefaultAst> defaults;
  std::vector<LetDecl> lets;
  std::optional<MainDecl> main;
  int next_id = 0;
};

std::string to_string(const TypeAst& t);
std::string to_string(const Pattern& p);
std::string to_string(const Expr& e);

}  // namespace xv::lang
