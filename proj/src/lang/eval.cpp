#include "xv/lang/eval.hpp"

#include "xv/solver.hpp"

namespace xv::lang {

ValuePtr fmap_value(const std::map<std::string, const DataDecl*>& ctors,
                    const std::function<ValuePtr(const ValuePtr&)>& h, const ValuePtr& v) {
  switch (v->tag) {
    case Value::Tag::Inl: return vinl(fmap_value(ctors, h, v->kids[0]));
    case Value::Tag::Inr: return vinr(fmap_value(ctors, h, v->kids[0]));
    case Value::Tag::Con: {
      auto it = ctors.find(v->name);
      if (it == ctors.end()) throw EvalError("fmap over unknown constructor " + v->name);
      std::vector<ValuePtr> fields;
      for (std::size_t i = 0; i < v->kids.size(); ++i)
        fields.push_back(it->second->fields[i] == FieldKind::Self ? h(v->kids[i]) : v->kids[i]);
      return vcon(v->name, std::move(fields));
    }
    default:
      throw EvalError("fmap expects a functor value, got " + to_string(v));
  }
}

namespace {

struct Env;
using EnvPtr = std::shared_ptr<const Env>;
using RPtr = std::shared_ptr<const Subst>;

struct Env {
  std::string name;
  ValuePtr value;
  // Generalised local let, re-evaluated per instantiation.
  const Expr* poly = nullptr;
  EnvPtr poly_env;
  RPtr poly_r;
  EnvPtr next;
};

EnvPtr extend(EnvPtr env, std::string name, ValuePtr v) {
  auto e = std::make_shared<Env>();
  e->name = std::move(name);
  e->value = std::move(v);
  e->next = std::move(env);
  return e;
}

}  // namespace

struct Evaluator::Impl {
  const Program& prog;
  const CheckedProgram* cp = nullptr;  // null in label mode
  std::map<std::string, const DataDecl*> ctors;
  std::map<std::string, int> lets;
  std::map<std::string, ValuePtr> memo;
  std::set<std::string> in_progress;
  std::map<std::string, Solution> evidence;
  std::map<int, std::string> labels_of;

  explicit Impl(const Program& p) : prog(p) {
    for (const DataDecl& d : prog.datas) ctors.emplace(d.ctor, &d);
    for (std::size_t i = 0; i < prog.lets.size(); ++i) lets.emplace(prog.lets[i].name, static_cast<int>(i));
  }

  bool labels() const { return cp == nullptr; }

  const NodeInfo* info(const Expr& e) const {
    if (!cp) return nullptr;
    auto it = cp->nodes.find(e.id);
    return it == cp->nodes.end() ? nullptr : &it->second;
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& arg) {
    if (f->tag != Value::Tag::Fun) throw EvalError("applying a non-function " + to_string(f));
    return f->fn(arg);
  }

  const Holds& solve_evidence(const Pred& recorded, const RPtr& r) {
    Pred p = r->apply(recorded);
    std::string key = to_string(p);
    auto it = evidence.find(key);
    if (it == evidence.end()) it = evidence.emplace(key, solve(p, {}, cp->opts.solver)).first;
    if (!is_holds(it->second))
      throw EvalError("no evidence for " + key + " (" + to_string(it->second) + ")");
    return std::get<Holds>(it->second);
  }

  // ---- top-level lets ---------------------------------------------------

  std::string let_key(int index, const Subst& r) const {
    std::string key = std::to_string(index);
    if (cp)
      for (const auto& [v, k] : cp->lets[index].scheme.vars)
        key += "|" + to_string(r.apply(Type::var(v, k)));
    return key;
  }

  ValuePtr let_value(int index, const Subst& r) {
    std::string key = let_key(index, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const LetDecl& d = prog.lets[index];
    if (!in_progress.insert(key).second)
      throw EvalError("value of " + d.name + " depends on itself");
    ValuePtr v = eval(*d.body, nullptr, std::make_shared<const Subst>(r));
    in_progress.erase(key);
    memo.emplace(key, v);
    return v;
  }

  ValuePtr let_reference(const Expr& e, const NodeInfo* ni, const RPtr& r) {
    if (!cp) return let_value(lets.at(e.name), Subst{});
    if (ni->self_ref) return let_value(ni->let_index, *r);
    Subst callee;
    for (const auto& [v, t] : ni->inst) {
      Type g = r->apply(t);
      if (!(g.is_var() && g.name() == v)) callee.bind(v, g);
    }
    return let_value(ni->let_index, callee);
  }

  // ---- builtins ---------------------------------------------------------

  ValuePtr cases_fn(const ValuePtr& cs) {
    return vfun([this, cs](const ValuePtr& v) -> ValuePtr {
      if (v->tag != Value::Tag::In) throw EvalError("cases expects a Fix value, got " + to_string(v));
      return apply(apply(cs, v->kids[0]), cases_fn(cs));
    });
  }

  ValuePtr constructor(const DataDecl& d, std::vector<ValuePtr> got) {
    if (got.size() == d.fields.size()) return vcon(d.ctor, std::move(got));
    return vfun([this, &d, got](const ValuePtr& v) {
      std::vector<ValuePtr> next = got;
      next.push_back(v);
      return constructor(d, std::move(next));
    });
  }

  ValuePtr builtin(const Expr& e, const NodeInfo* ni, const RPtr& r) {
    const std::string& n = e.name;
    if (n == "inj" || n == "inj'") {
      bool wrap = n == "inj'";
      if (labels()) return vfun([wrap](const ValuePtr& v) { return wrap ? vin(v) : v; });
      InjWitness w = *solve_evidence(*ni->pred, r).inj;
      return vfun([w, wrap](const ValuePtr& v) {
        ValuePtr out = inject_value(w, v);
        return wrap ? vin(out) : out;
      });
    }
    if (n == "prj") {
      if (labels()) {
        std::string label = labels_of.at(e.id);
        return vfun([label](const ValuePtr& v) { return v->name == label ? vjust(v) : vnothing(); });
      }
      MinusWitness w = *solve_evidence(*ni->pred, r).minus;
      return vfun([w](const ValuePtr& v) {
        Routed rt = route_branch(w, v);
        return rt.selected ? vjust(rt.value) : vnothing();
      });
    }
    if (n == "cases") return vfun([this](const ValuePtr& cs) { return cases_fn(cs); });
    if (n == "fmap")
      return vfun([this](const ValuePtr& h) {
        return vfun([this, h](const ValuePtr& v) {
          return fmap_value(ctors, [this, h](const ValuePtr& x) { return apply(h, x); }, v);
        });
      });
    if (n == "In") return vfun([](const ValuePtr& v) { return vin(v); });
    if (n == "Inl") return vfun([](const ValuePtr& v) { return vinl(v); });
    if (n == "Inr") return vfun([](const ValuePtr& v) { return vinr(v); });
    if (n == "Just") return vfun([](const ValuePtr& v) { return vjust(v); });
    if (n == "Nothing") return vnothing();
    if (n == "const")
      return vfun([](const ValuePtr& a) { return vfun([a](const ValuePtr&) { return a; }); });
    if (n == "noMatch" && labels())
      return vfun([](const ValuePtr& v) -> ValuePtr {
        throw PatternFailure("no case matches " + to_string(v));
      });
    auto c = ctors.find(n);
    if (c != ctors.end()) return constructor(*c->second, {});
    throw EvalError("unbound name " + n);
  }

  // ---- expressions ------------------------------------------------------

  EnvPtr match(const Pattern& p, const ValuePtr& v, EnvPtr env) {
    auto expect = [&](Value::Tag t) {
      if (v->tag != t) throw PatternFailure("pattern " + to_string(p) + " does not match " + to_string(v));
    };
    switch (p.tag) {
      case Pattern::Tag::Var:
        return extend(std::move(env), p.name, v);
      case Pattern::Tag::Wild:
        return env;
      case Pattern::Tag::Con:
        expect(Value::Tag::Con);
        if (v->name != p.name)
          throw PatternFailure("pattern " + to_string(p) + " does not match " + to_string(v));
        for (std::size_t i = 0; i < p.subs.size(); ++i) env = match(p.subs[i], v->kids[i], env);
        return env;
      case Pattern::Tag::In:
        expect(Value::Tag::In);
        return match(p.subs[0], v->kids[0], env);
      case Pattern::Tag::Inl:
        expect(Value::Tag::Inl);
        return match(p.subs[0], v->kids[0], env);
      case Pattern::Tag::Inr:
        expect(Value::Tag::Inr);
        return match(p.subs[0], v->kids[0], env);
    }
    return env;
  }

  ValuePtr lambda(const Expr& e, std::size_t i, EnvPtr env, RPtr r) {
    return vfun([this, &e, i, env, r](const ValuePtr& arg) {
      EnvPtr inner = match(e.params[i], arg, env);
      if (i + 1 == e.params.size()) return eval(*e.kids[0], inner, r);
      return lambda(e, i + 1, inner, r);
    });
  }

  ValuePtr lookup(const Expr& e, const EnvPtr& env, const RPtr& r) {
    for (const Env* p = env.get(); p; p = p->next.get()) {
      if (p->name != e.name) continue;
      if (!p->poly) return p->value;
      Subst local = *p->poly_r;
      if (const NodeInfo* ni = info(e))
        for (const auto& [v, t] : ni->inst) {
          Type g = r->apply(t);
          if (!(g.is_var() && g.name() == v)) local.bind(v, g);
        }
      return eval(*p->poly, p->poly_env, std::make_shared<const Subst>(std::move(local)));
    }
    const NodeInfo* ni = info(e);
    if (ni && ni->let_index >= 0) return let_reference(e, ni, r);
    if (labels() && lets.count(e.name)) return let_reference(e, ni, r);
    return builtin(e, ni, r);
  }

  ValuePtr branch(const Expr& e, const EnvPtr& env, const RPtr& r) {
    ValuePtr m = eval(*e.kids[0], env, r);
    ValuePtr n = eval(*e.kids[1], env, r);
    if (e.name == ".?.")
      return vfun([this, m, n](const ValuePtr& v) {
        if (v->tag == Value::Tag::Inl) return apply(m, v->kids[0]);
        if (v->tag == Value::Tag::Inr) return apply(n, v->kids[0]);
        throw EvalError(".?. expects a coproduct value, got " + to_string(v));
      });
    if (labels()) {
      std::string label = labels_of.at(e.id);
      return vfun([this, label, m, n](const ValuePtr& v) {
        return apply(v->tag == Value::Tag::Con && v->name == label ? m : n, v);
      });
    }
    MinusWitness w = *solve_evidence(*info(e)->pred, r).minus;
    return vfun([this, w, m, n](const ValuePtr& v) {
      Routed rt = route_branch(w, v);
      return apply(rt.selected ? m : n, rt.value);
    });
  }

  ValuePtr eval(const Expr& e, const EnvPtr& env, const RPtr& r) {
    switch (e.tag) {
      case Expr::Tag::Int: return vint(e.ival);
      case Expr::Tag::Bool: return vbool(e.bval);
      case Expr::Tag::Var: return lookup(e, env, r);
      case Expr::Tag::App: {
        ValuePtr f = eval(*e.kids[0], env, r);
        return apply(f, eval(*e.kids[1], env, r));
      }
      case Expr::Tag::Lam: return lambda(e, 0, env, r);
      case Expr::Tag::Let: {
        const NodeInfo* ni = info(e);
        if (ni && !ni->generic.empty()) {
          auto b = std::make_shared<Env>();
          b->name = e.name;
          b->poly = e.kids[0].get();
          b->poly_env = env;
          b->poly_r = r;
          b->next = env;
          return eval(*e.kids[1], b, r);
        }
        return eval(*e.kids[1], extend(env, e.name, eval(*e.kids[0], env, r)), r);
      }
      case Expr::Tag::Pair: return vpair(eval(*e.kids[0], env, r), eval(*e.kids[1], env, r));
      case Expr::Tag::BinOp: {
        if (e.name != "+" && e.name != "*") return branch(e, env, r);
        ValuePtr a = eval(*e.kids[0], env, r);
        ValuePtr b = eval(*e.kids[1], env, r);
        if (a->tag != Value::Tag::Int || b->tag != Value::Tag::Int)
          throw EvalError("arithmetic on non-integers");
        return vint(e.name == "+" ? a->ival + b->ival : a->ival * b->ival);
      }
      case Expr::Tag::Ann: return eval(*e.kids[0], env, r);
    }
    throw EvalError("bad expression");
  }
};

Evaluator::Evaluator(const CheckedProgram& cp) : impl_(std::make_unique<Impl>(cp.prog)) {
  impl_->cp = &cp;
}

Evaluator::Evaluator(const Program& prog, std::map<int, std::string> labels)
    : impl_(std::make_unique<Impl>(prog)) {
  impl_->labels_of = std::move(labels);
}

Evaluator::~Evaluator() = default;

ValuePtr Evaluator::eval_main(const Subst& types) {
  if (!impl_->prog.main) throw EvalError("program has no main");
  return impl_->eval(*impl_->prog.main->body, nullptr, std::make_shared<const Subst>(types));
}

ValuePtr Evaluator::eval_let(const std::string& name, const Subst& types) {
  auto it = impl_->lets.find(name);
  if (it == impl_->lets.end()) throw EvalError("no definition named " + name);
  return impl_->let_value(it->second, types);
}

ValuePtr Evaluator::apply(const ValuePtr& f, const ValuePtr& arg) { return impl_->apply(f, arg); }

std::size_t Evaluator::evidence_solved() const { return impl_->evidence.size(); }

}  // namespace xv::lang
