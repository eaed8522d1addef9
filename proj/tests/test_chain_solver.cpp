#include <doctest.h>

#include "oracles.hpp"
#include "xv/chain_solver.hpp"
#include "xv/solver.hpp"

using namespace xv;

namespace {
Type A = Type::atom("A"), B = Type::atom("B"), C = Type::atom("C"), D = Type::atom("D");
Type f = Type::var("f"), g = Type::var("g"), h = Type::var("h");
Type cp(const Type& l, const Type& r) { return Type::coprod(l, r); }
std::string show(const Solution& s) { return to_string(s); }
SolverFlags generalized() {
  SolverFlags fl;
  fl.generalized = true;
  return fl;
}
}  // namespace

TEST_CASE("membership") {
  CHECK(show(solve_chain(Pred::in(B, cp(A, B)))) == "holds");
  CHECK(show(solve_chain(Pred::in(f, cp(f, f)))) == "holds");
  CHECK(show(solve_chain(Pred::in(A, cp(g, A)))) == "stuck");
  CHECK(show(solve_chain(Pred::in(A, g))) == "stuck");
  CHECK(show(solve_chain(Pred::not_in(A, B))) == "holds");
  CHECK(show(solve_chain(Pred::not_in(A, cp(A, B)))) == "fails");
}

TEST_CASE("injection") {
  // Expected witnesses come from the unique-occurrence path oracle.
  Type g1 = cp(C, cp(B, cp(A, D)));
  REQUIRE(oracle::injection_path(A, g1));
  CHECK(to_string(*oracle::injection_path(A, g1)) == "R (R (L Refl))");
  CHECK(show(solve_chain(Pred::leq(A, g1))) == "holds R (R (L Refl))");
  CHECK(show(solve_chain(Pred::leq(A, A))) == "holds Refl");
  CHECK(show(solve_chain(Pred::leq(A, cp(A, A)))) == "fails");
  CHECK(show(solve_chain(Pred::leq(A, B))) == "fails");
  CHECK(show(solve_chain(Pred::leq(A, cp(f, B)))) == "stuck");
  CHECK(show(solve_chain(Pred::leq(f, g))) == "stuck");
}

TEST_CASE("a failing hypothesis moves on to the next clause") {
  CHECK(show(solve_chain(Pred::leq(f, cp(f, g)), {Pred::not_in(f, g)})) == "holds L Refl");
  CHECK(show(solve_chain(Pred::leq(f, cp(f, g)))) == "stuck");
}

TEST_CASE("subtraction") {
  Type big = cp(cp(A, B), cp(C, D));
  auto want = oracle::subtract(big, C);
  REQUIRE(want);
  CHECK(to_string(want->witness) == "Ri (A :+: B) (Onl D)");
  CHECK(show(solve_chain(Pred::minus(big, C, h))) ==
        "holds Ri (A :+: B) (Onl D); remainder (A :+: B) :+: D");
  Type I = Type::atom("Int"), Ch = Type::atom("Char"), Bo = Type::atom("Bool");
  CHECK(show(solve_chain(Pred::minus(cp(cp(I, Ch), Bo), Ch, h))) ==
        "holds Le Bool (Onr Int); remainder Int :+: Bool");
  CHECK(show(solve_chain(Pred::minus(A, A, h))) == "fails");
  CHECK(show(solve_chain(Pred::minus(f, A, h))) == "stuck");
}

TEST_CASE("generalized clauses are opt-in") {
  CHECK(show(solve_chain(Pred::leq(cp(A, B), cp(B, A)))) == "fails");
  CHECK(show(solve_chain(Pred::leq(cp(A, B), cp(B, A)), {}, generalized())) ==
        "holds Split (R Refl) (L Refl)");
  CHECK(show(solve_chain(Pred::leq(cp(A, C), cp(A, cp(B, C))), {}, generalized())) ==
        "holds Split (L Refl) (R (R Refl))");
  CHECK(show(solve_chain(Pred::minus(cp(cp(A, B), C), cp(A, C), h), {}, generalized())) ==
        "holds Dist (Le C (Onl B)) (Onr B); remainder B");
}

TEST_CASE("givens") {
  CHECK(is_holds(solve_chain(Pred::leq(f, g), {Pred::leq(f, g)})));
  Solution s = solve_chain(Pred::minus(f, A, h), {Pred::minus(f, A, B)});
  REQUIRE(is_holds(s));
  CHECK(std::get<Holds>(s).remainder == B);
}

TEST_CASE("improvement") {
  Subst s = improve(Pred::minus(f, A, h), B, Subst{});
  CHECK(s.apply(h) == B);
  CHECK_THROWS_AS(improve(Pred::minus(f, A, C), B, Subst{}), ImprovementConflict);
}

TEST_CASE("functor") {
  CHECK(is_holds(solve_functor(cp(A, B))));
  CHECK(is_stuck(solve_functor(cp(A, f))));
  CHECK(is_fails(solve_functor(Type::int_t())));
}

TEST_CASE("depth limit") {
  SolverFlags fl;
  fl.depth_limit = 2;
  CHECK_THROWS_AS(solve_chain(Pred::leq(A, cp(cp(B, cp(C, A)), D)), {}, fl), DepthExceeded);
}

TEST_CASE("trace names every clause attempt") {
  std::vector<std::string> lines;
  TraceHook hook = [&lines](const TraceRecord& r) { lines.push_back(format_trace(r)); };
  solve_chain(Pred::in(B, cp(A, B)), {}, {}, hook);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front() == "try Fig3.1: apart for In B (A :+: B)");
  bool matched = false;
  for (const std::string& l : lines)
    if (l.find("matched") != std::string::npos) matched = true;
  CHECK(matched);
}

TEST_CASE("chain order") {
  std::vector<std::string> ids;
  for (const Clause& c : chain_for(PredKind::Leq)) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"Fig4.1", "Fig4.2", "Fig4.3", "Fig4.gen", "Fig4.4"});
  ids.clear();
  for (const Clause& c : chain_for(PredKind::Minus)) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"Fig5.1", "Fig5.2", "Fig5.gen", "Fig5.3", "Fig5.4"});
}

TEST_CASE("solver configuration") {
  SolverConfig c;
  c.kind = SolverKind::Rows;
  CHECK_THROWS_AS(check_config(c), UnsupportedConfig);
  c.kind = SolverKind::Families;
  c.flags.generalized = true;
  CHECK_THROWS_AS(check_config(c), UnsupportedConfig);
  CHECK(parse_solver_kind("families") == SolverKind::Families);
  CHECK_FALSE(parse_solver_kind("prolog"));
}

TEST_CASE("solutions are equivariant under atom renaming") {
  // Sampled check backing the canonical-labeling enumeration.
  std::map<std::string, std::string> perm{{"A", "C"}, {"B", "D"}, {"C", "A"}, {"D", "B"}};
  std::function<Type(const Type&)> rename = [&](const Type& t) -> Type {
    if (t.is_coprod()) return Type::coprod(rename(t.left()), rename(t.right()));
    return Type::atom(perm.at(t.name()));
  };
  std::vector<std::pair<Type, Type>> pairs = oracle::ground_pairs(5);
  int checked = 0;
  for (std::size_t i = 0; i < pairs.size(); i += 7) {
    const auto& [p, q] = pairs[i];
    for (PredKind k : {PredKind::Leq, PredKind::Minus}) {
      Pred orig = k == PredKind::Leq ? Pred::leq(p, q) : Pred::minus(p, q, h);
      Pred moved = k == PredKind::Leq ? Pred::leq(rename(p), rename(q))
                                      : Pred::minus(rename(p), rename(q), h);
      Solution a = solve_chain(orig), b = solve_chain(moved);
      REQUIRE(a.index() == b.index());
      if (is_holds(a)) {
        const Holds& ha = std::get<Holds>(a);
        const Holds& hb = std::get<Holds>(b);
        CHECK(ha.inj == hb.inj);
        if (ha.remainder) CHECK(rename(*ha.remainder) == *hb.remainder);
      }
      ++checked;
    }
  }
  CHECK(checked > 100);
}
