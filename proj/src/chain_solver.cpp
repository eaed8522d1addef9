#include "xv/chain_solver.hpp"

#include "xv/unify.hpp"

namespace xv {

std::string format_trace(const TraceRecord& r) {
  return "try " + r.id + ": " + r.outcome + " for " + r.goal;
}

namespace {

const Type& pf() {
  static const Type t = Type::var("?f");
  return t;
}
const Type& pg() {
  static const Type t = Type::var("?g");
  return t;
}
const Type& ph() {
  static const Type t = Type::var("?h");
  return t;
}
const Type& pr1() {
  static const Type t = Type::var("?r1");
  return t;
}
const Type& pr2() {
  static const Type t = Type::var("?r2");
  return t;
}

Type bound(const Subst& b, const Type& v) { return b.apply(v); }

Holds unit(const Subst&, const std::vector<Holds>&) { return {}; }

std::vector<Clause> make_in_chain() {
  Type gh = Type::coprod(pg(), ph());
  return {
      {"Fig3.1", Pred::in(pf(), pf()), {}, Polarity::Asserts, unit},
      {"Fig3.2", Pred::in(pf(), gh), {Pred::in(pf(), pg())}, Polarity::Asserts, unit},
      {"Fig3.3", Pred::in(pf(), gh), {Pred::in(pf(), ph())}, Polarity::Asserts, unit},
      {"Fig3.4", Pred::in(pf(), pg()), {}, Polarity::Denies, nullptr},
  };
}

// Wraps the first hypothesis's injection witness; a hypothesis discharged
// by a given carries no witness and neither does the conclusion.
std::optional<InjWitness> wrap_inj(const std::optional<InjWitness>& w,
                                   InjWitness (*ctor)(InjWitness)) {
  if (!w) return std::nullopt;
  return ctor(*w);
}

std::vector<Clause> make_leq_chain() {
  Type gh = Type::coprod(pg(), ph());
  Type fg = Type::coprod(pf(), pg());
  return {
      {"Fig4.1", Pred::leq(pf(), pf()), {}, Polarity::Asserts,
       [](const Subst&, const std::vector<Holds>&) {
         Holds h;
         h.inj = InjWitness::refl();
         return h;
       }},
      {"Fig4.2", Pred::leq(pf(), gh), {Pred::leq(pf(), pg()), Pred::not_in(pf(), ph())},
       Polarity::Asserts,
       [](const Subst&, const std::vector<Holds>& hs) {
         Holds h;
         h.inj = wrap_inj(hs[0].inj, &InjWitness::l);
         return h;
       }},
      {"Fig4.3", Pred::leq(pf(), gh), {Pred::leq(pf(), ph()), Pred::not_in(pf(), pg())},
       Polarity::Asserts,
       [](const Subst&, const std::vector<Holds>& hs) {
         Holds h;
         h.inj = wrap_inj(hs[0].inj, &InjWitness::r);
         return h;
       }},
      {"Fig4.gen", Pred::leq(fg, ph()), {Pred::leq(pf(), ph()), Pred::leq(pg(), ph())},
       Polarity::Asserts,
       [](const Subst&, const std::vector<Holds>& hs) {
         Holds h;
         if (hs[0].inj && hs[1].inj) h.inj = InjWitness::split(*hs[0].inj, *hs[1].inj);
         return h;
       },
       true},
      {"Fig4.4", Pred::leq(pf(), pg()), {}, Polarity::Denies, nullptr},
  };
}

std::vector<Clause> make_minus_chain() {
  Type fg = Type::coprod(pf(), pg());
  Type gh = Type::coprod(pg(), ph());
  Type out = Type::var("?out");
  return {
      {"Fig5.1", Pred::minus(fg, pf(), out), {}, Polarity::Asserts,
       [](const Subst& b, const std::vector<Holds>&) {
         Holds h;
         Type rest = bound(b, pg());
         h.minus = MinusWitness::onl(rest);
         h.remainder = rest;
         return h;
       }},
      {"Fig5.2", Pred::minus(fg, pg(), out), {}, Polarity::Asserts,
       [](const Subst& b, const std::vector<Holds>&) {
         Holds h;
         Type rest = bound(b, pf());
         h.minus = MinusWitness::onr(rest);
         h.remainder = rest;
         return h;
       }},
      {"Fig5.gen", Pred::minus(pf(), gh, out),
       {Pred::minus(pf(), pg(), pr1()), Pred::minus(pr1(), ph(), pr2())}, Polarity::Asserts,
       [](const Subst&, const std::vector<Holds>& hs) {
         Holds h;
         if (hs[0].minus && hs[1].minus) h.minus = MinusWitness::dist(*hs[0].minus, *hs[1].minus);
         h.remainder = hs[1].remainder;
         return h;
       },
       true},
      {"Fig5.3", Pred::minus(fg, ph(), out),
       {Pred::not_in(ph(), pg()), Pred::minus(pf(), ph(), pr1())}, Polarity::Asserts,
       [](const Subst& b, const std::vector<Holds>& hs) {
         Holds h;
         Type g = bound(b, pg());
         if (hs[1].minus) h.minus = MinusWitness::le(g, *hs[1].minus);
         if (hs[1].remainder) h.remainder = Type::coprod(*hs[1].remainder, g);
         return h;
       }},
      {"Fig5.4", Pred::minus(fg, ph(), out),
       {Pred::not_in(ph(), pf()), Pred::minus(pg(), ph(), pr1())}, Polarity::Asserts,
       [](const Subst& b, const std::vector<Holds>& hs) {
         Holds h;
         Type f = bound(b, pf());
         if (hs[1].minus) h.minus = MinusWitness::ri(f, *hs[1].minus);
         if (hs[1].remainder) h.remainder = Type::coprod(f, *hs[1].remainder);
         return h;
       }},
  };
}

bool mentions_pattern_var(const Type& t) {
  if (t.ground()) return false;
  if (t.is_var()) return !t.name().empty() && t.name()[0] == '?';
  for (const Type& a : t.args())
    if (mentions_pattern_var(a)) return true;
  return false;
}

std::size_t matched_arity(const Pred& p) { return p.kind == PredKind::Minus ? 2 : p.args.size(); }

class ChainSolver {
 public:
  ChainSolver(const std::vector<Pred>& givens, const SolverFlags& flags, const TraceHook& trace)
      : givens_(givens), flags_(flags), trace_(trace) {}

  Solution solve(const Pred& p, int depth) {
    if (depth > flags_.depth_limit)
      throw DepthExceeded("derivation depth exceeded " + std::to_string(flags_.depth_limit) +
                          " while solving " + to_string(p));
    if (auto g = from_givens(p)) return *g;
    switch (p.kind) {
      case PredKind::NotIn: {
        Solution s = solve(Pred::in(p.args[0], p.args[1]), depth);
        if (is_holds(s)) return Fails{};
        if (is_fails(s)) return Holds{};
        return s;
      }
      case PredKind::Functor:
        return solve_functor(p.args[0]);
      default:
        return walk(p, depth);
    }
  }

 private:
  std::optional<Solution> from_givens(const Pred& p) {
    for (const Pred& g : givens_) {
      if (p.kind == PredKind::Minus && g.kind == PredKind::Minus) {
        if (g.args[0] == p.args[0] && g.args[1] == p.args[1]) {
          note("given", p, "matched");
          Holds h;
          h.remainder = g.args[2];
          return h;
        }
        continue;
      }
      if (g == p) {
        note("given", p, "matched");
        return Holds{};
      }
      bool opposite = (p.kind == PredKind::In && g.kind == PredKind::NotIn) ||
                      (p.kind == PredKind::NotIn && g.kind == PredKind::In);
      if (opposite && g.args == p.args) {
        note("given", p, "hyp-failed");
        return Fails{};
      }
    }
    return std::nullopt;
  }

  void note(const std::string& id, const Pred& goal, const char* outcome) {
    if (trace_) trace_({id, to_string(goal), outcome});
  }

  Solution walk(const Pred& goal, int depth) {
    std::size_t n = matched_arity(goal);
    bool goal_ground = true;
    for (std::size_t i = 0; i < n; ++i) goal_ground = goal_ground && goal.args[i].ground();

    for (const Clause& c : chain_for(goal.kind)) {
      if (c.generalized_only && !flags_.generalized) continue;
      Subst b;
      bool matched = true;
      for (std::size_t i = 0; i < n && matched; ++i)
        matched = match_into(c.head.args[i], goal.args[i], b);
      if (!matched) {
        bool unifiable = false;
        if (!goal_ground) {
          Subst u;
          unifiable = true;
          for (std::size_t i = 0; i < n && unifiable; ++i)
            unifiable = unify_into(c.head.args[i], goal.args[i], u);
        }
        if (unifiable) {
          note(c.id, goal, "stuck");
          return Stuck{c.id + " unifies with " + to_string(goal) + " but does not match"};
        }
        note(c.id, goal, "apart");
        continue;
      }

      std::vector<Holds> results;
      bool failed = false;
      std::optional<std::string> stuck;
      int fresh = 0;
      for (const Pred& hyp : c.hyps) {
        Pred h = b.apply(hyp);
        std::optional<std::string> out_var;
        if (h.kind == PredKind::Minus && mentions_pattern_var(h.args[2])) {
          out_var = h.args[2].name();
          h.args[2] = Type::var("~o" + std::to_string(depth) + "." + std::to_string(fresh++));
        }
        bool open = false;
        for (std::size_t i = 0; i < matched_arity(h); ++i) open = open || mentions_pattern_var(h.args[i]);
        if (open) {
          stuck = "hypothesis " + to_string(hyp) + " depends on an unsolved hypothesis";
          results.emplace_back();
          continue;
        }
        Solution s = solve(h, depth + 1);
        if (is_fails(s)) {
          failed = true;
          break;
        }
        if (const auto* st = std::get_if<Stuck>(&s)) {
          if (!stuck) stuck = st->reason;
          results.emplace_back();
          continue;
        }
        Holds held = std::get<Holds>(std::move(s));
        if (out_var && held.remainder) b.bind(*out_var, *held.remainder);
        results.push_back(std::move(held));
      }
      if (failed) {
        note(c.id, goal, "hyp-failed");
        continue;
      }
      if (stuck) {
        note(c.id, goal, "stuck");
        return Stuck{*stuck};
      }
      note(c.id, goal, "matched");
      if (c.polarity == Polarity::Denies) return Fails{};
      return c.build(b, results);
    }
    return Fails{};
  }

  const std::vector<Pred>& givens_;
  const SolverFlags& flags_;
  const TraceHook& trace_;
};

}  // namespace

const std::vector<Clause>& chain_for(PredKind kind) {
  static const std::vector<Clause> in = make_in_chain();
  static const std::vector<Clause> leq = make_leq_chain();
  static const std::vector<Clause> minus = make_minus_chain();
  static const std::vector<Clause> none;
  switch (kind) {
    case PredKind::In: return in;
    case PredKind::Leq: return leq;
    case PredKind::Minus: return minus;
    default: return none;
  }
}

Solution solve_functor(const Type& f) {
  switch (f.tag()) {
    case TypeTag::Atom:
      return Holds{};
    case TypeTag::Var:
      return Stuck{"Functor " + f.name() + " awaits instantiation"};
    case TypeTag::Coprod: {
      Solution l = solve_functor(f.left());
      if (is_fails(l)) return l;
      Solution r = solve_functor(f.right());
      if (is_fails(r) || is_stuck(l)) return is_fails(r) ? r : l;
      return r;
    }
    default:
      return Fails{};
  }
}

Solution solve_chain(const Pred& p, const std::vector<Pred>& givens, const SolverFlags& flags,
                     const TraceHook& trace) {
  ChainSolver solver(givens, flags, trace);
  return solver.solve(p, 0);
}

Subst improve(const Pred& p, const Type& remainder, Subst s) {
  Type out = s.apply(p.args.at(2));
  Type r = s.apply(remainder);
  std::string why;
  if (!unify_into(out, r, s, &why))
    throw ImprovementConflict("improving " + to_string(p) + ": remainder " + to_string(r) +
                              " conflicts with " + to_string(out));
  return s;
}

}  // namespace xv
