#include "xv/family_solver.hpp"

#include <map>

#include "xv/unify.hpp"

namespace xv {

namespace {

Type con(const char* name, std::vector<Type> args = {}) { return Type::con(name, std::move(args)); }

Type yep() { return con("Yep"); }
Type nope() { return con("Nope"); }

Type fv(const char* name) { return Type::var(name, Kind::StarToStar); }
Type sv(const char* name) { return Type::var(name, Kind::Star); }

struct FamilyInfo {
  std::string figure;
  Kind result;
  std::vector<FamilyEquation> eqs;
};

std::map<std::string, FamilyInfo> make_families() {
  std::map<std::string, FamilyInfo> m;
  Type f = fv("?f"), g = fv("?g"), h = fv("?h");
  Type b = sv("?b"), c = sv("?c");
  Type lp = sv("?lp"), rp = sv("?rp"), inl = sv("?inl"), inr = sv("?inr");
  Type x = fv("?x"), p = sv("?p");
  Type gh = Type::coprod(g, h);
  Type fg = Type::coprod(f, g);
  auto F = [](const char* name, std::vector<Type> args, Kind k = Kind::Star) {
    return Type::fam(name, std::move(args), k);
  };

  m["IsIn"] = {"Fig7",
               Kind::Star,
               {
                   {"1", {f, f}, yep()},
                   {"2", {f, gh}, F("Or", {F("IsIn", {f, g}), F("IsIn", {f, h})})},
                   {"3", {f, g}, nope()},
               }};
  m["Or"] = {"Fig7",
             Kind::Star,
             {
                 {"1", {nope(), nope()}, nope()},
                 {"2", {b, c}, yep()},
             }};
  m["Into"] = {"Fig8",
               Kind::Star,
               {
                   {"1", {f, f}, con("Refl")},
                   {"2", {f, gh},
                    F("Ifi", {F("Into", {f, g}), F("IsIn", {f, g}), F("Into", {f, h}),
                              F("IsIn", {f, h})})},
                   {"3", {f, g}, nope()},
               }};
  m["Ifi"] = {"Fig8",
              Kind::Star,
              {
                  {"1", {nope(), inl, nope(), inr}, nope()},
                  {"2", {nope(), nope(), rp, inr}, con("R", {rp})},
                  {"3", {lp, inl, rp, nope()}, con("L", {lp})},
                  {"4", {lp, inl, rp, inr}, nope()},
              }};
  m["Minus"] = {"Fig10",
                Kind::Star,
                {
                    {"1", {f, f}, nope()},
                    {"2", {fg, f}, con("Onl", {g})},
                    {"3", {fg, g}, con("Onr", {f})},
                    {"4", {fg, h},
                     F("Ifm", {g, F("Minus", {f, h}), F("IsIn", {h, g}), f, F("Minus", {g, h}),
                               F("IsIn", {h, f})})},
                    {"5", {f, g}, nope()},
                }};
  m["Ifm"] = {"Fig10",
              Kind::Star,
              {
                  {"1", {g, nope(), inr, f, nope(), inl}, nope()},
                  {"2", {g, nope(), inr, f, rp, nope()}, con("Ri", {f, rp})},
                  {"3", {g, lp, nope(), f, rp, inl}, con("Le", {g, lp})},
                  {"4", {g, lp, inr, f, rp, inl}, nope()},
              }};
  m["OutOf"] = {"Fig10",
                Kind::StarToStar,
                {
                    {"1", {con("Onl", {x})}, x},
                    {"2", {con("Onr", {x})}, x},
                    {"3", {con("Le", {f, p})}, Type::coprod(F("OutOf", {p}, Kind::StarToStar), f)},
                    {"4", {con("Ri", {f, p})}, Type::coprod(f, F("OutOf", {p}, Kind::StarToStar))},
                }};
  return m;
}

const FamilyInfo& info(const std::string& family) {
  static const std::map<std::string, FamilyInfo> families = make_families();
  auto it = families.find(family);
  if (it == families.end()) throw UnknownFamily("unknown type family " + family);
  return it->second;
}

class Reducer {
 public:
  explicit Reducer(const TraceHook& trace) : trace_(trace) {}

  Type go(const Type& t) {
    if (!t.has_family()) return t;
    std::vector<Type> args;
    args.reserve(t.args().size());
    for (const Type& a : t.args()) args.push_back(go(a));
    if (!t.is(TypeTag::Fam)) return with_args(t, std::move(args));
    return rewrite(t.name(), std::move(args));
  }

  std::optional<Type> stuck_at;

 private:
  Type rewrite(const std::string& family, std::vector<Type> args) {
    const FamilyInfo& fi = info(family);
    Type goal = Type::fam(family, args, fi.result);
    for (const FamilyEquation& eq : fi.eqs) {
      std::string id = fi.figure + "." + family + "." + eq.id;
      Subst b;
      bool matched = eq.lhs.size() == args.size();
      for (std::size_t i = 0; matched && i < args.size(); ++i)
        matched = match_into(eq.lhs[i], args[i], b);
      if (matched) {
        note(id, goal, "matched");
        return go(b.apply(eq.rhs));
      }
      if (unifiable_infinitary(Type::con("#", eq.lhs), Type::con("#", args), true)) {
        note(id, goal, "stuck");
        if (!stuck_at) stuck_at = goal;
        return goal;
      }
      note(id, goal, "apart");
    }
    if (!stuck_at) stuck_at = goal;
    return goal;
  }

  void note(const std::string& id, const Type& goal, const char* outcome) {
    if (trace_) trace_({id, to_string(goal), outcome});
  }

  const TraceHook& trace_;
};

bool is_con(const Type& t, const char* name, std::size_t arity) {
  return t.is(TypeTag::Con) && t.name() == name && t.args().size() == arity;
}

}  // namespace

const std::vector<FamilyEquation>& family_equations(const std::string& family) {
  return info(family).eqs;
}

Kind family_result_kind(const std::string& family) { return info(family).result; }

Type fam(const std::string& family, std::vector<Type> args) {
  return Type::fam(family, std::move(args), family_result_kind(family));
}

ReduceOutcome reduce(const Type& t, const TraceHook& trace) {
  Reducer r(trace);
  Type out = r.go(t);
  ReduceOutcome result{std::nullopt, std::nullopt, out};
  if (out.has_family())
    result.stuck_at = r.stuck_at ? r.stuck_at : out;
  else
    result.reduced = out;
  return result;
}

Type witness_type(const InjWitness& w) {
  switch (w.form()) {
    case InjWitness::Form::Refl: return con("Refl");
    case InjWitness::Form::L: return con("L", {witness_type(w.inner())});
    case InjWitness::Form::R: return con("R", {witness_type(w.inner())});
    case InjWitness::Form::Split: break;
  }
  throw UnknownFamily("Split witnesses have no family encoding");
}

Type witness_type(const MinusWitness& w) {
  switch (w.form()) {
    case MinusWitness::Form::Onl: return con("Onl", {w.type()});
    case MinusWitness::Form::Onr: return con("Onr", {w.type()});
    case MinusWitness::Form::Le: return con("Le", {w.type(), witness_type(w.inner())});
    case MinusWitness::Form::Ri: return con("Ri", {w.type(), witness_type(w.inner())});
    case MinusWitness::Form::Dist: break;
  }
  throw UnknownFamily("Dist witnesses have no family encoding");
}

std::optional<InjWitness> to_inj_witness(const Type& t) {
  if (is_con(t, "Refl", 0)) return InjWitness::refl();
  if (is_con(t, "L", 1) || is_con(t, "R", 1)) {
    auto inner = to_inj_witness(t.arg(0));
    if (!inner) return std::nullopt;
    return t.name() == "L" ? InjWitness::l(*inner) : InjWitness::r(*inner);
  }
  return std::nullopt;
}

std::optional<MinusWitness> to_minus_witness(const Type& t) {
  if (is_con(t, "Onl", 1)) return MinusWitness::onl(t.arg(0));
  if (is_con(t, "Onr", 1)) return MinusWitness::onr(t.arg(0));
  if (is_con(t, "Le", 2) || is_con(t, "Ri", 2)) {
    auto inner = to_minus_witness(t.arg(1));
    if (!inner) return std::nullopt;
    return t.name() == "Le" ? MinusWitness::le(t.arg(0), *inner)
                            : MinusWitness::ri(t.arg(0), *inner);
  }
  return std::nullopt;
}

namespace {

Stuck stuck_from(const ReduceOutcome& r) {
  return Stuck{"stuck at " + to_string(r.stuck_at ? *r.stuck_at : r.term)};
}

}  // namespace

Solution solve_tf(const Pred& p, const std::vector<Pred>& givens, const TraceHook& trace) {
  for (const Pred& g : givens) {
    if (p.kind == PredKind::Minus && g.kind == PredKind::Minus && g.args[0] == p.args[0] &&
        g.args[1] == p.args[1]) {
      Holds h;
      h.remainder = g.args[2];
      return h;
    }
    if (g == p) return Holds{};
  }
  switch (p.kind) {
    case PredKind::In:
    case PredKind::NotIn: {
      ReduceOutcome r = reduce(fam("IsIn", {p.args[0], p.args[1]}), trace);
      if (!r.reduced) return stuck_from(r);
      bool yes = is_con(*r.reduced, "Yep", 0);
      if (p.kind == PredKind::NotIn) yes = !yes;
      if (yes) return Holds{};
      return Fails{};
    }
    case PredKind::Leq: {
      ReduceOutcome r = reduce(fam("Into", {p.args[0], p.args[1]}), trace);
      if (!r.reduced) return stuck_from(r);
      auto w = to_inj_witness(*r.reduced);
      if (!w) return Fails{};
      Holds h;
      h.inj = *w;
      return h;
    }
    case PredKind::Minus: {
      ReduceOutcome r = reduce(fam("Minus", {p.args[0], p.args[1]}), trace);
      if (!r.reduced) return stuck_from(r);
      auto w = to_minus_witness(*r.reduced);
      if (!w) return Fails{};
      ReduceOutcome out = reduce(fam("OutOf", {*r.reduced}), trace);
      if (!out.reduced) return stuck_from(out);
      Holds h;
      h.minus = *w;
      h.remainder = *out.reduced;
      return h;
    }
    case PredKind::Functor:
      return solve_functor(p.args[0]);
  }
  return Fails{};
}

}  // namespace xv
