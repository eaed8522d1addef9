#pragma once

#include <string>

#include "xv/lang/ast.hpp"

namespace xv::lang {

// Declarations start in column 1; indented lines continue the previous
// declaration. "--" starts a comment.
Program parse_program(const std::string& text);

// Single expression; ids are drawn from prog.next_id.
ExprPtr parse_expr(const std::string& text, Program& prog);

TypeAst parse_type(const std::string& text);

// Predicate syntax: "f :<: g", "f :-: g [= h]", "In f g [fails]",
// "Functor f", and the family spellings "IsIn f g", "Into f g", "Minus f g".
PredAst parse_pred(const std::string& text);

}  // namespace xv::lang
