#include <doctest.h>

#include "xv/lang/parser.hpp"

using namespace xv;
using namespace xv::lang;

namespace {
std::string expr(const std::string& text) {
  Program p;
  return to_string(*parse_expr(text, p));
}
std::string syntax_error(const std::string& text) {
  try {
    parse_program(text);
  } catch (const SyntaxError& e) {
    return e.what();
  }
  return "accepted";
}
}  // namespace

TEST_CASE("declarations") {
  Program p = parse_program(
      "data Const = Const Int\n"
      "data Sum e = Plus e e\n"
      "data Neg = Neg self\n"
      "type E1 = Fix (Const :+: Sum)\n"
      "default ((g :+: h) :-: g = h)\n"
      "-- a comment\n"
      "let x : (Const :<: f) => Fix f = inj' (Const 1)\n"
      "let y = 1\n"
      "  + 2\n"
      "main = y\n");
  CHECK(p.datas.size() == 3);
  CHECK(p.datas[1].fields == std::vector<FieldKind>{FieldKind::Self, FieldKind::Self});
  CHECK(p.datas[2].fields == std::vector<FieldKind>{FieldKind::Self});
  CHECK(p.aliases.size() == 1);
  REQUIRE(p.defaults.size() == 1);
  CHECK(p.defaults[0].text == "((g :+: h) :-: g = h)");
  REQUIRE(p.lets.size() == 2);
  CHECK(p.lets[0].sig);
  CHECK(to_string(*p.lets[1].body) == "(1 + 2)");
  CHECK(p.main);
}

TEST_CASE("precedence") {
  CHECK(expr("\\x y -> x + y * 2") == "(\\x y -> (x + (y * 2)))");
  CHECK(expr("f (g x) ? h") == "((f (g x)) ? h)");
  CHECK(expr("a ? b .?. c") == "(a ? (b .?. c))");
  CHECK(expr("a ? b ? c") == "(a ? (b ? c))");
  CHECK(expr("let z = 1 in (z, True)") == "(let z = 1 in (z, True))");
  CHECK(expr("(x :: E1)") == "(x :: E1)");
}

TEST_CASE("patterns") {
  CHECK(expr("\\(In (Inl e)) -> e") == "(\\(In (Inl e)) -> e)");
  CHECK(expr("\\(Const n) _ -> n") == "(\\(Const n) _ -> n)");
}

TEST_CASE("types") {
  CHECK(to_string(parse_type("a :+: b :+: c")) == "a :+: (b :+: c)");
  CHECK(to_string(parse_type("Maybe (Const Int)")) == "Maybe (Const Int)");
  CHECK(to_string(parse_type("Int -> Bool -> Int")) == "Int -> Bool -> Int");
}

TEST_CASE("predicates") {
  CHECK(parse_pred("f :<: g").kind == PredKind::Leq);
  PredAst open = parse_pred("f :-: g");
  CHECK(open.kind == PredKind::Minus);
  CHECK(open.open_output);
  CHECK(parse_pred("f :-: g = h").args.size() == 3);
  CHECK(parse_pred("In A B fails").kind == PredKind::NotIn);
  CHECK(parse_pred("Functor f").kind == PredKind::Functor);
  CHECK(parse_pred("Into A B").kind == PredKind::Leq);
  CHECK(parse_pred("Minus A B").open_output);
  CHECK(parse_pred("IsIn A B").kind == PredKind::In);
}

TEST_CASE("syntax errors carry positions") {
  CHECK(syntax_error("let = 3") == "1:5: expected a name, found '='");
  CHECK(syntax_error("main = (1") == "1:10: expected ')', found end of declaration");
  CHECK(syntax_error("data X = ") == "1:9: expected a capitalised name, found end of declaration");
  CHECK(syntax_error("let x = 1\nmain = 1 +") ==
        "2:11: expected an expression, found end of declaration");
  CHECK(syntax_error("data X = X Char") == "1:12: expected a field (self, Int or Bool), found 'Char'");
}
