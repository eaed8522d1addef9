#include <doctest.h>

#include "xv/unify.hpp"

using namespace xv;

namespace {
Type A = Type::atom("A"), B = Type::atom("B");
Type f = Type::var("f"), g = Type::var("g"), h = Type::var("h");
Type cp(const Type& l, const Type& r) { return Type::coprod(l, r); }
}  // namespace

TEST_CASE("mgu") {
  UnifyOutcome u = mgu(cp(f, B), cp(A, g));
  REQUIRE(u);
  CHECK(u.subst->apply(f) == A);
  CHECK(u.subst->apply(g) == B);
  CHECK_FALSE(mgu(cp(A, f), cp(B, g)));
  CHECK(mgu(A, A));
}

TEST_CASE("occurs check") {
  UnifyOutcome u = mgu(f, cp(A, f));
  CHECK_FALSE(u);
  CHECK(u.diagnostic.find("occurs check") != std::string::npos);
}

TEST_CASE("unify_into extends a substitution") {
  Subst s;
  REQUIRE(unify_into(f, cp(g, A), s));
  REQUIRE(unify_into(g, B, s));
  CHECK(s.apply(f) == cp(B, A));
  std::string why;
  CHECK_FALSE(unify_into(f, A, s, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("matching binds pattern variables only") {
  CHECK(match_onto(cp(f, g), cp(A, h)));
  CHECK_FALSE(match_onto(cp(A, B), cp(f, B)));
  CHECK(match_onto(cp(f, f), cp(A, A)));
  CHECK_FALSE(match_onto(cp(f, f), cp(A, B)));
  CHECK_FALSE(match_onto(cp(f, f), cp(g, h)));
}

TEST_CASE("apartness uses rational trees") {
  CHECK(apart(A, B));
  CHECK_FALSE(apart(f, cp(A, f)));
  CHECK_FALSE(apart(cp(f, f), cp(A, g)));
  CHECK(apart(cp(f, f), cp(A, B)));
  CHECK_FALSE(apart(cp(f, cp(A, f)), cp(g, g)));
}
