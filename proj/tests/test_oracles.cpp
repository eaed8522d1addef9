#include <doctest.h>

#include "oracles.hpp"

using namespace xv;

namespace {
Type A = Type::atom("A"), B = Type::atom("B"), C = Type::atom("C");
Type cp(const Type& l, const Type& r) { return Type::coprod(l, r); }
}  // namespace

TEST_CASE("shape and labeling counts") {
  // Catalan numbers and Bell-style restricted growth counts over 4 atoms.
  CHECK(oracle::shapes(4).size() == 5);
  CHECK(oracle::shapes(7).size() == 132);
  std::vector<std::vector<int>> labs;
  oracle::labelings(4, true, labs);
  CHECK(labs.size() == 15);
  labs.clear();
  oracle::labelings(5, true, labs);
  CHECK(labs.size() == 51);
  labs.clear();
  oracle::labelings(3, false, labs);
  CHECK(labs.size() == 64);
}

TEST_CASE("ground universe size") {
  // Two leaves: 1 shape pair x 2 labelings; three: 2 shape pairs x 5.
  CHECK(oracle::ground_pairs(3).size() == 12);
  CHECK(oracle::ground_pairs(7).size() == 103035);
}

TEST_CASE("occurrence paths") {
  CHECK(oracle::count_occurrences(A, cp(cp(A, B), A)) == 2);
  CHECK_FALSE(oracle::injection_path(A, cp(cp(A, B), A)));
  CHECK(to_string(*oracle::injection_path(B, cp(cp(A, B), A))) == "L (R Refl)");
  CHECK(to_string(*oracle::injection_path(cp(A, B), cp(cp(A, B), C))) == "L Refl");
}

TEST_CASE("reference subtraction") {
  auto s = oracle::subtract(cp(A, cp(B, C)), C);
  REQUIRE(s);
  CHECK(to_string(s->witness) == "Ri A (Onr B)");
  CHECK(s->remainder == cp(A, B));
  CHECK_FALSE(oracle::subtract(A, A));
  CHECK_FALSE(oracle::subtract(cp(cp(A, C), C), B));
  auto left_first = oracle::subtract(cp(A, A), A);
  REQUIRE(left_first);
  CHECK(to_string(left_first->witness) == "Onl A");
}

TEST_CASE("values and direct evaluation") {
  std::vector<lang::ValuePtr> vs;
  oracle::values_of(cp(A, B), vs);
  CHECK(vs.size() == 4);
  CHECK(lang::to_string(vs[2]) == "Inr (B 0)");
  std::vector<oracle::Term> terms = oracle::square_terms(3);
  CHECK(terms.size() == 74);
  oracle::Term sq{oracle::Term::Op::Square, 0, {oracle::Term{oracle::Term::Op::Const, 3, {}}}};
  CHECK(oracle::eval_term(sq) == 9);
}
