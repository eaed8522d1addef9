#include <doctest.h>

#include "xv/defaulting.hpp"

using namespace xv;

namespace {
Type K = Type::atom("Const"), S = Type::atom("Sum"), P = Type::atom("Product");
Type f = Type::var("f"), g = Type::var("g"), h = Type::var("h");
Type cp(const Type& l, const Type& r) { return Type::coprod(l, r); }
const std::vector<Pred> eval1_x = {Pred::leq(K, f), Pred::leq(S, f), Pred::minus(f, K, S)};
}  // namespace

TEST_CASE("the standard declaration") {
  DefaultDecl d = standard_default();
  CHECK(d.text == "default ((g :+: h) :-: g = h)");
  CHECK(to_string(d.templ) == "g :+: h");
  CHECK_NOTHROW(validate_default(d, SolverConfig{}));
}

TEST_CASE("declarations are validated") {
  CHECK_THROWS_AS(make_default(cp(g, Type::var("k")), g, h), std::invalid_argument);
  CHECK_NOTHROW(validate_default(make_default(cp(g, h), h, g), SolverConfig{}));
  CHECK_THROWS_AS(validate_default(make_default(cp(g, h), cp(h, g), g), SolverConfig{}),
                  InvalidDefault);
}

TEST_CASE("ambiguity follows the functional dependency") {
  CHECK(ambiguous_vars(eval1_x, {}) == std::set<std::string>{"f"});
  std::vector<Pred> chain = {Pred::minus(f, P, g), Pred::minus(g, S, K)};
  CHECK(ambiguous_vars(chain, {}) == std::set<std::string>{"f", "g"});
  CHECK(ambiguous_vars(chain, {"f"}).empty());
  Scheme s;
  s.vars = {{"f", Kind::StarToStar}};
  s.preds = eval1_x;
  s.body = Type::int_t();
  CHECK(find_ambiguous(s) == std::set<std::string>{"f"});
  s.body = Type::fun(Type::fix(f), Type::int_t());
  CHECK(find_ambiguous(s).empty());
}

TEST_CASE("defaulting instantiates and improves") {
  Subst s = apply_defaults(eval1_x, {"f"}, {standard_default()}, SolverConfig{});
  CHECK(s.apply(f) == cp(K, S));
  std::vector<Pred> chain = {Pred::minus(f, P, g), Pred::minus(g, S, K)};
  Subst t = apply_defaults(chain, {"f", "g"}, {standard_default()}, SolverConfig{});
  CHECK(t.apply(g) == cp(S, K));
  CHECK(t.apply(f) == cp(P, cp(S, K)));
}

TEST_CASE("without a matching declaration the constraints are reported") {
  try {
    apply_defaults(eval1_x, {"f"}, {}, SolverConfig{});
    FAIL("expected an ambiguity");
  } catch (const AmbiguityError& e) {
    CHECK(std::string(e.what()) ==
          "ambiguous type variable a subject to Const :<: a, Sum :<: a, a :-: Const = Sum");
    CHECK(e.vars.size() == 1);
    CHECK(e.constraints.size() == 3);
  }
  CHECK_THROWS_AS(apply_defaults({Pred::leq(K, f)}, {"f"}, {standard_default()}, SolverConfig{}),
                  AmbiguityError);
}

TEST_CASE("a default that leaves a constraint unsatisfied") {
  std::vector<Pred> ps = {Pred::minus(f, K, S), Pred::leq(P, f)};
  CHECK_THROWS_AS(apply_defaults(ps, {"f"}, {standard_default()}, SolverConfig{}),
                  ResidualError);
}

TEST_CASE("constraint descriptions are canonical") {
  std::vector<Pred> shuffled = {eval1_x[2], eval1_x[1], eval1_x[0]};
  CHECK(describe_constraints(shuffled) == "Const :<: a, Sum :<: a, a :-: Const = Sum");
}
