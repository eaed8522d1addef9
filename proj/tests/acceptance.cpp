// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xv/chain_solver.hpp"
#include "xv/cli.hpp"
#include "xv/defaulting.hpp"
#include "xv/family_solver.hpp"
#include "xv/lang/eval.hpp"
#include "xv/lang/infer.hpp"
#include "xv/lang/parser.hpp"
#include "xv/rows.hpp"
#include "xv/solver.hpp"

using namespace xv;
using namespace xv::lang;

namespace {

// Pinned limits.
constexpr double kFamilyGoldenSeconds = 1.0;
constexpr double kDifferentialSeconds = 30.0;
constexpr int kDifferentialLeaves = 7;
constexpr int kMinInstantiations = 24;
constexpr int kCoherenceAtoms = 4;
constexpr int kDesugarDepth = 3;

const std::string kDir = XV_PROGRAMS_DIR;

Type A = Type::atom("A"), B = Type::atom("B"), C = Type::atom("C"), D = Type::atom("D");
Type cp(const Type& l, const Type& r) { return Type::coprod(l, r); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Report {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"xv"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// ---- 1 -------------------------------------------------------------------

Report family_goldens() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  auto into = [](const Type& f, const Type& g, std::vector<std::string>* trace = nullptr) {
    TraceHook hook;
    if (trace) hook = [trace](const TraceRecord& t) { trace->push_back(format_trace(t)); };
    ReduceOutcome o = reduce(fam("Into", {f, g}), hook);
    return o.reduced ? to_string(*o.reduced) : std::string("<stuck>");
  };
  std::string got = into(B, cp(cp(A, B), C));
  r.expect(got == "L (R Refl)", "Into B ((A :+: B) :+: C) = " + got);
  got = into(D, cp(A, B));
  r.expect(got == "Nope", "Into D (A :+: B) = " + got);
  std::vector<std::string> trace;
  got = into(A, cp(A, B), &trace);
  r.expect(got == "L Refl", "Into A (A :+: B) = " + got);
  bool via = false;
  for (const std::string& line : trace)
    if (line == "try Fig8.Ifi.3: matched for Ifi Refl Yep Nope Nope") via = true;
  r.expect(via, "Into A (A :+: B) does not rewrite via Ifi Refl Yep Nope Nope");
  got = into(A, cp(A, A));
  r.expect(got == "Nope", "Into A (A :+: A) = " + got);

  ReduceOutcome m = reduce(fam("Minus", {cp(cp(A, B), C), B}));
  std::string mw = m.reduced ? to_string(*m.reduced) : "<stuck>";
  r.expect(mw == "Le C (Onr A)", "Minus ((A :+: B) :+: C) B = " + mw);
  if (m.reduced) {
    ReduceOutcome o = reduce(fam("OutOf", {*m.reduced}));
    std::string ow = o.reduced ? to_string(*o.reduced) : "<stuck>";
    r.expect(ow == "A :+: C", "OutOf (" + mw + ") = " + ow);
  }
  double secs = seconds_since(t0);
  r.expect(secs < kFamilyGoldenSeconds, "took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "6 rewrites in " << secs << " s";
  r.detail = d.str();
  return r;
}

// ---- 2 -------------------------------------------------------------------

Report chain_goldens() {
  Report r;
  Type f = Type::var("f"), g = Type::var("g");
  auto check = [&r](const Solution& s, const std::string& want, const std::string& what) {
    r.expect(to_string(s) == want, what + " = " + to_string(s));
  };
  check(solve_chain(Pred::in(B, cp(A, B))), "holds", "In B (A :+: B)");
  check(solve_chain(Pred::in(f, cp(f, f))), "holds", "In f (f :+: f)");
  check(solve_chain(Pred::in(A, cp(g, A))), "stuck", "In A (g :+: A)");
  check(solve_chain(Pred::leq(f, cp(f, g)), {Pred::not_in(f, g)}), "holds L Refl",
        "f :<: (f :+: g) given In f g fails");
  Type I = Type::atom("Int"), Ch = Type::atom("Char"), Bo = Type::atom("Bool");
  Solution m = solve_chain(Pred::minus(cp(cp(I, Ch), Bo), Ch, Type::var("h")));
  bool rem = is_holds(m) && std::get<Holds>(m).remainder &&
             *std::get<Holds>(m).remainder == cp(I, Bo);
  r.expect(rem, "((Int :+: Char) :+: Bool) :-: Char = " + to_string(m));
  r.detail = "5 goals";
  return r;
}

// ---- 3 and 5 ---------------------------------------------------------------

std::vector<Pred> ground_preds(const Type& f, const Type& g) {
  return {Pred::leq(f, g), Pred::minus(f, g, Type::var("?out")), Pred::in(f, g)};
}

Report differential(const std::vector<std::pair<Type, Type>>& pairs) {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  long long n = 0, mismatches = 0;
  for (const auto& [f, g] : pairs)
    for (const Pred& p : ground_preds(f, g)) {
      ++n;
      Solution a = solve_chain(p);
      Solution b = solve_tf(p);
      if (!(a == b)) {
        ++mismatches;
        r.expect(false, to_string(p) + ": chains " + to_string(a) + ", families " + to_string(b));
      }
    }
  double secs = seconds_since(t0);
  r.expect(secs < kDifferentialSeconds, "took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << n << " predicates over " << pairs.size() << " pairs, " << mismatches << " mismatches, "
    << secs << " s";
  r.detail = d.str();
  return r;
}

Report oracle_equivalence(const std::vector<std::pair<Type, Type>>& pairs) {
  Report r;
  long long n = 0, mismatches = 0;
  auto compare = [&](const std::string& what, const Solution& s, const Solution& want) {
    ++n;
    if (!(s == want)) {
      ++mismatches;
      r.expect(false, what + ": solver " + to_string(s) + ", oracle " + to_string(want));
    }
  };
  for (const auto& [f, g] : pairs) {
    Solution inj_want = Fails{};
    if (auto w = oracle::injection_path(f, g)) inj_want = Holds{*w, std::nullopt, std::nullopt};
    Solution in_want = oracle::count_occurrences(f, g) > 0 ? Solution(Holds{}) : Solution(Fails{});
    Solution minus_want = Fails{};
    if (auto s = oracle::subtract(f, g)) minus_want = Holds{std::nullopt, s->witness, s->remainder};
    std::vector<Pred> ps = ground_preds(f, g);
    std::vector<Solution> wants = {inj_want, minus_want, in_want};
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::string what = to_string(ps[i]);
      compare("chains " + what, solve_chain(ps[i]), wants[i]);
      compare("families " + what, solve_tf(ps[i]), wants[i]);
    }
  }
  std::ostringstream d;
  d << n << " comparisons, " << mismatches << " mismatches";
  r.detail = d.str();
  return r;
}

// ---- 4 -------------------------------------------------------------------

Report divergence() {
  Report r;
  Type f = Type::var("f"), g = Type::var("g");
  Pred goal = Pred::leq(f, cp(f, g));
  std::vector<Pred> givens{Pred::not_in(f, g)};
  Solution chains = solve_chain(goal, givens);
  Solution families = solve_tf(goal, givens);
  r.expect(is_holds(chains), "chains: " + to_string(chains));
  r.expect(is_stuck(families), "families: " + to_string(families));
  r.detail = "chains " + to_string(chains) + ", families " + to_string(families);
  return r;
}

// ---- 6 -------------------------------------------------------------------

CheckedProgram check_file(const std::string& text, CheckOptions opts = {}) {
  return check_program(parse_program(text), opts);
}

Report inference_goldens() {
  Report r;
  CheckedProgram cp_ = check_file(read(kDir + "/benchmark.xv"));
  Type f = Type::var("f"), g = Type::var("g");
  Type konst = Type::atom("Const"), sum = Type::atom("Sum"), prod = Type::atom("Product");
  Type sq = Type::atom("Square");
  auto scheme = [](std::vector<Pred> preds, Type body) {
    Scheme s;
    for (const std::string& v : free_vars(body)) s.vars.emplace_back(v, Kind::StarToStar);
    for (const Pred& p : preds)
      for (const std::string& v : free_vars(p))
        if (std::find_if(s.vars.begin(), s.vars.end(), [&](auto& q) { return q.first == v; }) ==
            s.vars.end())
          s.vars.emplace_back(v, Kind::StarToStar);
    s.preds = std::move(preds);
    s.body = std::move(body);
    return s;
  };
  std::map<std::string, Scheme> want;
  want.emplace("x", scheme({Pred::leq(konst, f), Pred::leq(sum, f)}, Type::fix(f)));
  want.emplace("y", scheme({Pred::leq(konst, f), Pred::leq(sum, f), Pred::leq(prod, f)},
                           Type::fix(f)));
  want.emplace("eval1",
               scheme({Pred::minus(f, konst, sum)}, Type::fun(Type::fix(f), Type::int_t())));
  want.emplace("desugarSqr",
               scheme({Pred::minus(f, sq, g), Pred::leq(prod, g), Pred::functor(g)},
                      Type::fun(Type::fix(f), Type::fix(g))));
  int matched = 0;
  for (const LetInfo& l : cp_.lets) {
    auto it = want.find(l.name);
    if (it == want.end()) continue;
    std::string got = format_scheme(l.name, l.scheme);
    std::string expected = format_scheme(l.name, it->second);
    r.expect(got == expected, "got " + got + ", expected " + expected);
    if (got == expected) ++matched;
  }
  r.expect(matched == static_cast<int>(want.size()), "missing bindings");

  CheckOptions gen;
  gen.solver.flags.generalized = true;
  bool ambiguous = false;
  try {
    check_file(read(kDir + "/eval2_prime.xv"), gen);
  } catch (const AmbiguityError&) {
    ambiguous = true;
  }
  r.expect(ambiguous, "eval2' under generalized clauses is not reported ambiguous");
  CliResult c = cli({"check", "--generalized", kDir + "/eval2_prime.xv"});
  r.expect(c.code == cli::kAmbiguous, "xv check --generalized eval2_prime.xv exit " +
                                          std::to_string(c.code));
  std::ostringstream d;
  d << matched << "/" << want.size() << " schemes; eval2' ambiguous (exit " << c.code << ")";
  r.detail = d.str();
  return r;
}

// ---- 7 and 8 ---------------------------------------------------------------

Report end_to_end() {
  Report r;
  for (const char* file : {"benchmark.xv", "annotated_e1.xv", "annotated_e1p.xv"}) {
    CliResult c = cli({"run", kDir + "/" + file});
    r.expect(c.code == 0 && c.out == "3\n",
             std::string(file) + ": exit " + std::to_string(c.code) + ", output " + c.out);
  }
  CliResult c = cli({"run", kDir + "/no_default.xv"});
  r.expect(c.code == cli::kAmbiguous, "no_default.xv exit " + std::to_string(c.code));
  const std::string constraints = "Const :<: a, Sum :<: a, a :-: Const = Sum";
  r.expect(c.err.find(constraints) != std::string::npos, "no_default.xv: " + c.err);
  r.detail = "3, 3, 3; without default exit " + std::to_string(c.code);
  return r;
}

Report incoherence() {
  Report r;
  CliResult e1 = cli({"run", "--expose-constructors", kDir + "/lefty_e1.xv"});
  CliResult e1p = cli({"run", "--expose-constructors", kDir + "/lefty_e1p.xv"});
  r.expect(e1.code == 0 && e1.out == "(3, False)\n", "E1: " + e1.out + e1.err);
  r.expect(e1p.code == 0 && e1p.out == "(3, True)\n", "E1': " + e1p.out + e1p.err);
  auto strip = [](std::string s) { return s.empty() ? s : s.substr(0, s.size() - 1); };
  r.detail = "E1 " + strip(e1.out) + ", E1' " + strip(e1p.out);
  return r;
}

// ---- 9 -------------------------------------------------------------------

// Coproducts of distinct atoms, every shape and ordering, up to max leaves.
std::vector<Type> orderings(const std::vector<std::string>& atoms, int max_leaves) {
  std::vector<Type> out;
  std::vector<int> idx;
  std::vector<bool> used(atoms.size(), false);
  std::function<void(int)> pick = [&](int n) {
    if (static_cast<int>(idx.size()) == n) {
      std::vector<int> labels(idx);
      for (const oracle::Shape& s : oracle::shapes(n)) {
        std::size_t next = 0;
        std::function<Type(const oracle::Shape&)> build = [&](const oracle::Shape& sh) -> Type {
          if (sh.leaf) return Type::atom(atoms[labels[next++]]);
          Type l = build(sh.kids[0]);
          Type rt = build(sh.kids[1]);
          return Type::coprod(l, rt);
        };
        out.push_back(build(s));
      }
      return;
    }
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (used[a]) continue;
      used[a] = true;
      idx.push_back(static_cast<int>(a));
      pick(n);
      idx.pop_back();
      used[a] = false;
    }
  };
  for (int n = 1; n <= max_leaves; ++n) pick(n);
  return out;
}

// Smallest prefix-greedy set of variables that determines all the others.
std::vector<std::string> root_vars(const std::vector<Pred>& preds, std::set<std::string> amb) {
  std::vector<std::string> roots;
  std::set<std::string> chosen;
  while (!ambiguous_vars(preds, chosen).empty()) {
    std::set<std::string> left = ambiguous_vars(preds, chosen);
    std::string best;
    std::size_t best_left = SIZE_MAX;
    for (const std::string& v : left) {
      if (!amb.count(v)) continue;
      std::set<std::string> with = chosen;
      with.insert(v);
      std::size_t n = ambiguous_vars(preds, with).size();
      if (n < best_left) {
        best_left = n;
        best = v;
      }
    }
    if (best.empty()) break;
    roots.push_back(best);
    chosen.insert(best);
  }
  return roots;
}

// Extends s by improvement until every predicate is ground, then checks
// that all of them hold. False if the instantiation does not type.
bool complete(const std::vector<Pred>& preds, Subst& s) {
  for (bool progress = true; progress;) {
    progress = false;
    for (const Pred& p : preds) {
      Pred q = s.apply(p);
      if (q.kind != PredKind::Minus || q.ground()) continue;
      if (!q.args[0].ground() || !q.args[1].ground()) continue;
      Solution sol = solve_chain(q);
      if (!is_holds(sol) || !std::get<Holds>(sol).remainder) return false;
      try {
        s = improve(q, *std::get<Holds>(sol).remainder, s);
      } catch (const ImprovementConflict&) {
        return false;
      }
      progress = true;
    }
  }
  for (const Pred& p : preds) {
    Pred q = s.apply(p);
    if (!q.ground()) return false;
    Solution sol = solve_chain(q);
    if (!is_holds(sol)) return false;
    if (q.kind == PredKind::Minus && std::get<Holds>(sol).remainder != q.args[2]) return false;
  }
  return true;
}

Report permutation_coherence() {
  Report r;
  const std::string defs = read(kDir + "/coherence.xv");
  const std::vector<std::string> mains = {
      "main = eval1 x",
      "main = eval2 y",
      "main = eval1' x",
      "main = evalOr0 y",
      "main = eval2 (desugarSqr z)",
      "main = (prj (inj (Const 1)) :: Maybe (Const Int))",
  };
  std::vector<Type> candidates =
      orderings({"Const", "Sum", "Product", "Square"}, kCoherenceAtoms);
  std::ostringstream d;
  long long divergences = 0;
  for (const std::string& m : mains) {
    CheckOptions opts;
    opts.defaulting = false;
    opts.allow_ambiguous_main = true;
    CheckedProgram prog = check_file(defs + "\n" + m + "\n", opts);
    const MainInfo& mi = *prog.main;
    std::vector<std::string> roots = root_vars(mi.preds, mi.ambiguous);
    Evaluator ev(prog);
    long long tried = 0, typed = 0;
    std::optional<std::string> first;
    std::vector<std::size_t> at(roots.size(), 0);
    std::function<void(std::size_t, Subst)> go = [&](std::size_t i, Subst s) {
      if (i == roots.size()) {
        ++tried;
        if (!complete(mi.preds, s)) return;
        ++typed;
        std::string v = to_string(ev.eval_main(s));
        if (!first) first = v;
        if (v != *first) {
          ++divergences;
          r.expect(false, m + ": " + v + " at " + to_string(s) + " versus " + *first);
        }
        return;
      }
      for (const Type& t : candidates) {
        Subst next = s;
        next.bind(roots[i], t);
        go(i + 1, next);
      }
    };
    go(0, Subst{});
    r.expect(tried >= kMinInstantiations, m + ": only " + std::to_string(tried) + " candidates");
    r.expect(typed >= 1, m + ": no instantiation types");
    d << "[" << m.substr(7) << ": " << typed << "/" << tried << " -> " << first.value_or("?")
      << "] ";
  }
  d << divergences << " divergences";
  r.detail = d.str();
  return r;
}

// ---- 10 ------------------------------------------------------------------

bool distinct_summands(const Type& t) {
  std::vector<Type> parts = flatten(t);
  return std::set<Type>(parts.begin(), parts.end()).size() == parts.size();
}

// Number of values v of f with prj (inj v) != Just v, plus values of g
// outside the image of inj that prj selects anyway.
long long round_trip_failures(const Type& f, const Type& g, const InjWitness& iw,
                              const MinusWitness& mw, long long& values,
                              std::vector<std::string>& examples) {
  long long failures = 0;
  std::vector<ValuePtr> vs;
  oracle::values_of(f, vs);
  std::vector<ValuePtr> injected;
  for (const ValuePtr& v : vs) {
    ++values;
    ValuePtr in_g = inject_value(iw, v);
    injected.push_back(in_g);
    Routed back = route_branch(mw, in_g);
    if (!back.selected || !equal(back.value, v)) {
      ++failures;
      examples.push_back("prj (inj " + to_string(v) + ") at " + to_string(f) + " in " +
                         to_string(g) + " gave " +
                         (back.selected ? to_string(back.value) : "Nothing"));
    }
  }
  std::vector<ValuePtr> all;
  oracle::values_of(g, all);
  for (const ValuePtr& v : all) {
    bool from_f = std::any_of(injected.begin(), injected.end(),
                              [&](const ValuePtr& w) { return equal(v, w); });
    if (!from_f && route_branch(mw, v).selected) {
      ++failures;
      examples.push_back("prj selects " + to_string(v) + " which is not in " + to_string(f));
    }
  }
  return failures;
}

Report round_trip(const std::vector<std::pair<Type, Type>>& pairs) {
  Report r;
  long long injections = 0, values = 0, failures = 0;
  long long gen_checked = 0, gen_values = 0, gen_failures = 0, gen_duplicates = 0,
            gen_duplicate_breaks = 0;
  SolverFlags gen;
  gen.generalized = true;
  for (const auto& [f, g] : pairs) {
    if (f == g) continue;
    std::vector<std::string> examples;
    Solution inj = solve_chain(Pred::leq(f, g));
    if (is_holds(inj)) {
      Solution minus = solve_chain(Pred::minus(g, f, Type::var("?out")));
      if (!is_holds(minus) || !std::get<Holds>(minus).minus) {
        ++failures;
        r.expect(false, "no branch evidence for " + to_string(g) + " :-: " + to_string(f));
      } else {
        ++injections;
        failures += round_trip_failures(f, g, *std::get<Holds>(inj).inj,
                                        *std::get<Holds>(minus).minus, values, examples);
        for (const std::string& e : examples) r.expect(false, e);
      }
      continue;
    }
    // Injections only the generalized clauses admit.
    Solution ginj = solve_chain(Pred::leq(f, g), {}, gen);
    if (!is_holds(ginj)) continue;
    Solution gminus = solve_chain(Pred::minus(g, f, Type::var("?out")), {}, gen);
    if (!is_holds(gminus)) continue;
    const InjWitness& iw = *std::get<Holds>(ginj).inj;
    const MinusWitness& mw = *std::get<Holds>(gminus).minus;
    if (distinct_summands(f) && distinct_summands(g)) {
      ++gen_checked;
      gen_failures += round_trip_failures(f, g, iw, mw, gen_values, examples);
      for (const std::string& e : examples) r.expect(false, "generalized: " + e);
    } else {
      ++gen_duplicates;
      long long ignored = 0;
      if (round_trip_failures(f, g, iw, mw, ignored, examples) > 0) ++gen_duplicate_breaks;
    }
  }
  std::ostringstream d;
  d << injections << " injections, " << values << " values, " << failures << " failures; "
    << "generalized: " << gen_checked << " injections, " << gen_values << " values, "
    << gen_failures << " failures (" << gen_duplicate_breaks << " of " << gen_duplicates
    << " with repeated summands break the law, not counted)";
  r.detail = d.str();
  return r;
}

// ---- 11 ------------------------------------------------------------------

Report rows_baseline() {
  Report r;
  std::string text = read(kDir + "/rows.xv");
  r.expect(text.find("::") == std::string::npos, "rows.xv has annotations");
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);)
    r.expect(line.rfind("default", 0) != 0, "rows.xv has a default declaration");
  Program prog = parse_program(text);
  try {
    rows::RowResult res = rows::infer_rows(prog);
    std::set<std::string> names;
    for (const auto& [name, t] : res.lets) names.insert(name);
    for (const char* n : {"x", "eval1", "eval2"})
      r.expect(names.count(n) != 0, std::string("no type for ") + n);
    r.expect(res.main_type && *res.main_type == "Int",
             "main : " + res.main_type.value_or("<none>"));
    Evaluator ev(prog, res.labels);
    std::string v = to_string(ev.eval_main());
    r.expect(v == "3", "main evaluates to " + v);
    r.detail = "main : " + res.main_type.value_or("?") + ", evaluates to " + v;
  } catch (const rows::RowError& e) {
    r.expect(false, e.what());
  }
  return r;
}

// ---- 12 ------------------------------------------------------------------

ValuePtr to_e3(const oracle::Term& t) {
  switch (t.op) {
    case oracle::Term::Op::Square: return vin(vinl(vcon("Square", {to_e3(t.kids[0])})));
    case oracle::Term::Op::Times:
      return vin(vinr(vinl(vcon("Times", {to_e3(t.kids[0]), to_e3(t.kids[1])}))));
    default: return vin(vinr(vinr(vcon("Const", {vint(t.n)}))));
  }
}

bool mentions_square(const ValuePtr& v) {
  if (v->tag == Value::Tag::Con && v->name == "Square") return true;
  for (const ValuePtr& k : v->kids)
    if (mentions_square(k)) return true;
  return false;
}

Report desugaring() {
  Report r;
  CheckedProgram prog = check_file(read(kDir + "/coherence.xv"));
  Evaluator ev(prog);
  ValuePtr desugar = ev.eval_let("desugar3");
  ValuePtr run = ev.eval_let("run3");
  std::vector<oracle::Term> terms = oracle::square_terms(kDesugarDepth);
  long long mismatches = 0;
  for (const oracle::Term& t : terms) {
    ValuePtr in = to_e3(t);
    ValuePtr out = ev.apply(desugar, in);
    ValuePtr n = ev.apply(run, in);
    long long want = oracle::eval_term(t);
    bool ok = !mentions_square(out) && n->tag == Value::Tag::Int && n->ival == want;
    if (!ok) {
      ++mismatches;
      r.expect(false, to_string(in) + " gave " + to_string(n) + ", expected " +
                          std::to_string(want));
    }
  }
  std::ostringstream d;
  d << terms.size() << " terms, " << mismatches << " mismatches";
  r.detail = d.str();
  return r;
}

}  // namespace

int main() {
  std::vector<std::pair<Type, Type>> pairs = oracle::ground_pairs(kDifferentialLeaves);
  std::vector<std::pair<std::string, std::function<Report()>>> criteria = {
      {"family rewriting goldens", family_goldens},
      {"instance chain goldens", chain_goldens},
      {"ground differential", [&] { return differential(pairs); }},
      {"non-ground divergence", divergence},
      {"oracle equivalence", [&] { return oracle_equivalence(pairs); }},
      {"inference goldens", inference_goldens},
      {"end-to-end evaluation", end_to_end},
      {"incoherence witness", incoherence},
      {"permutation coherence", permutation_coherence},
      {"prj/inj round trip", [&] { return round_trip(pairs); }},
      {"row baseline", rows_baseline},
      {"desugaring", desugaring},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.ok = false;
      r.problems.push_back(std::string("exception: ") + e.what());
    }
    if (!r.ok) ++failed;
    std::cout << (r.ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": "
              << r.detail << "\n";
    for (const std::string& p : r.problems) std::cout << "    " << p << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
