#include <doctest.h>

#include <fstream>
#include <sstream>

#include "xv/lang/eval.hpp"
#include "xv/lang/parser.hpp"
#include "xv/rows.hpp"

using namespace xv;
using namespace xv::lang;

namespace {

std::string rows_program() {
  std::ifstream in(std::string(XV_PROGRAMS_DIR) + "/rows.xv");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_main(std::string text) {
  return text.substr(0, text.find("main ="));
}

std::string row_error(const std::string& text) {
  try {
    rows::infer_rows(parse_program(text));
  } catch (const rows::RowError& e) {
    return e.what();
  }
  return "accepted";
}

}  // namespace

TEST_CASE("benchmark under row typing") {
  rows::RowResult r = rows::infer_rows(parse_program(rows_program()));
  std::map<std::string, std::string> lets(r.lets.begin(), r.lets.end());
  CHECK(lets["x"] == "x : forall a. (a \\ Const, a \\ Plus) => Fix Σ(Const: Const, Plus: Sum | a)");
  CHECK(lets["eval1"] == "eval1 : Fix Σ(Const: Const, Plus: Sum) -> Int");
  CHECK(lets["eval2"] == "eval2 : Fix Σ(Const: Const, Plus: Sum, Times: Product) -> Int");
  REQUIRE(r.main_type);
  CHECK(*r.main_type == "Int");
}

TEST_CASE("rows are compared up to permutation") {
  std::string text = without_main(rows_program()) +
                     "let eval1' = cases (evalSum ? evalConst)\n"
                     "main = (eval1 x, eval1' x)\n";
  rows::RowResult r = rows::infer_rows(parse_program(text));
  std::map<std::string, std::string> lets(r.lets.begin(), r.lets.end());
  CHECK(lets["eval1'"] == "eval1' : Fix Σ(Const: Const, Plus: Sum) -> Int");
  CHECK(*r.main_type == "(Int, Int)");
}

TEST_CASE("closed rows reject extra labels") {
  std::string text = without_main(rows_program()) + "main = eval1 y\n";
  CHECK(row_error(text) != "accepted");
  CHECK(row_error(without_main(rows_program()) + "main = eval2 x\n") == "accepted");
}

TEST_CASE("label uniqueness") {
  std::string text =
      "data Const = Const Int\n"
      "let bad = inj' (Const 1)\n"
      "main = (bad :: Fix (Const :+: Const))\n";
  CHECK(row_error(text) == "3:27: duplicate label Const");
}

TEST_CASE("representation-dependent forms are rejected") {
  std::string head = "data Const = Const Int\n";
  CHECK(row_error(head + "let l = \\(In e) -> 1\n") ==
        "2:10: coproduct patterns are not available in the row system");
  CHECK(row_error(head + "let q = \\e -> e .?. e\n") == "2:17: .?. is not available in the row system");
}

TEST_CASE("label-directed evaluation") {
  Program prog = parse_program(without_main(rows_program()) + "main = (eval1 x, eval2 y)\n");
  rows::RowResult r = rows::infer_rows(prog);
  Evaluator ev(prog, r.labels);
  CHECK(to_string(ev.eval_main()) == "(3, 9)");
}
