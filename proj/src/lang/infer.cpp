#include "xv/lang/infer.hpp"

#include <algorithm>

#include "xv/unify.hpp"

namespace xv::lang {

TypeError::TypeError(Pos p, const std::string& msg)
    : std::runtime_error(to_string(p) + ": " + msg), pos(p) {}

namespace {

const Kind kStar = Kind::Star;
const Kind kFun = Kind::StarToStar;

bool is_rigid(const Type& t) { return t.is_var() && !t.name().empty() && t.name()[0] == '!'; }

Type maybe(Type t) { return Type::con("Maybe", {std::move(t)}); }

struct Local {
  std::string name;
  Type type = Type::int_t();
  std::vector<std::string> generic;  // locally generalised variables
};

struct PendingPred {
  Pred pred;
  Pos pos;
};

enum class VarMode { Flexible, Rigid, Named };

class Checker {
 public:
  Checker(CheckedProgram& cp) : cp_(cp), opts_(cp.opts) {}

  void run() {
    declare_data();
    declare_aliases();
    declare_defaults();
    for (std::size_t i = 0; i < cp_.prog.lets.size(); ++i) check_let(cp_.prog.lets[i]);
    if (cp_.prog.main) check_main(*cp_.prog.main);
  }

  Type resolve(const TypeAst& t, Kind expected, std::map<std::string, Type>& vars, VarMode mode) {
    Type out = resolve_inner(t, expected, vars, mode);
    if (kind_of(out) != expected)
      throw TypeError(t.pos, "kind mismatch: " + to_string(t) + " has kind " +
                                 to_string(kind_of(out)) + ", expected " + to_string(expected));
    return out;
  }

 private:
  // ---- declarations -----------------------------------------------------

  void declare_data() {
    static const std::set<std::string> reserved_types = {"Fix", "Maybe", "Int", "Bool"};
    static const std::set<std::string> reserved_ctors = {"In",   "Inl",   "Inr",  "Just",
                                                         "Nothing", "True", "False"};
    for (const DataDecl& d : cp_.prog.datas) {
      if (reserved_types.count(d.functor))
        throw TypeError(d.pos, d.functor + " is a built-in type name");
      if (reserved_ctors.count(d.ctor))
        throw TypeError(d.pos, d.ctor + " is a built-in constructor");
      if (!cp_.functors.emplace(d.functor, &d).second)
        throw TypeError(d.pos, "duplicate functor " + d.functor);
      if (!cp_.ctors.emplace(d.ctor, &d).second)
        throw TypeError(d.pos, "duplicate constructor " + d.ctor);
    }
  }

  void declare_aliases() {
    for (const TypeAlias& a : cp_.prog.aliases) {
      if (cp_.functors.count(a.name) || cp_.aliases.count(a.name))
        throw TypeError(a.pos, "duplicate type name " + a.name);
      std::map<std::string, Type> vars;
      Type t = resolve_any(a.type, vars, VarMode::Named);
      if (!vars.empty()) throw TypeError(a.pos, "type aliases must be closed");
      cp_.aliases.emplace(a.name, t);
    }
  }

  void declare_defaults() {
    for (const DefaultAst& d : cp_.prog.defaults) {
      std::map<std::string, Type> vars;
      Type templ = resolve(d.pattern.args[0], kFun, vars, VarMode::Named);
      Type sub = resolve(d.pattern.args[1], kFun, vars, VarMode::Named);
      Type out = resolve(d.pattern.args[2], kFun, vars, VarMode::Named);
      try {
        DefaultDecl decl = make_default(templ, sub, out, d.text);
        validate_default(decl, opts_.solver);
        cp_.defaults.push_back(std::move(decl));
      } catch (const std::invalid_argument& e) {
        throw TypeError(d.pos, e.what());
      } catch (const InvalidDefault& e) {
        throw TypeError(d.pos, e.what());
      }
    }
  }

  // ---- types ------------------------------------------------------------

  Type resolve_any(const TypeAst& t, std::map<std::string, Type>& vars, VarMode mode) {
    Type probe = resolve_inner(t, kStar, vars, mode);
    return probe;
  }

  Type var_for(const TypeAst& t, Kind expected, std::map<std::string, Type>& vars, VarMode mode) {
    auto it = vars.find(t.name);
    if (it != vars.end()) {
      if (kind_of(it->second) != expected)
        throw TypeError(t.pos, "type variable " + t.name + " is used at two kinds");
      return it->second;
    }
    Type v = mode == VarMode::Flexible ? fresh(expected)
             : mode == VarMode::Rigid  ? Type::var("!" + t.name, expected)
                                       : Type::var(t.name, expected);
    vars.emplace(t.name, v);
    return v;
  }

  Type resolve_inner(const TypeAst& t, Kind expected, std::map<std::string, Type>& vars,
                     VarMode mode) {
    switch (t.tag) {
      case TypeAst::Tag::Var:
        return var_for(t, expected, vars, mode);
      case TypeAst::Tag::Name: {
        auto a = cp_.aliases.find(t.name);
        if (a != cp_.aliases.end()) return a->second;
        if (cp_.functors.count(t.name)) return Type::atom(t.name, kFun);
        if (t.name == "Maybe") throw TypeError(t.pos, "Maybe needs an argument");
        throw TypeError(t.pos, "unknown type " + t.name);
      }
      case TypeAst::Tag::Int:
        return Type::int_t();
      case TypeAst::Tag::Bool:
        return Type::bool_t();
      case TypeAst::Tag::Coprod:
        return Type::coprod(resolve(t.args[0], kFun, vars, mode), resolve(t.args[1], kFun, vars, mode));
      case TypeAst::Tag::Fix:
        return Type::fix(resolve(t.args[0], kFun, vars, mode));
      case TypeAst::Tag::Fun:
        return Type::fun(resolve(t.args[0], kStar, vars, mode), resolve(t.args[1], kStar, vars, mode));
      case TypeAst::Tag::Pair:
        return Type::pair(resolve(t.args[0], kStar, vars, mode), resolve(t.args[1], kStar, vars, mode));
      case TypeAst::Tag::App: {
        const TypeAst& head = t.args[0];
        if (head.tag == TypeAst::Tag::Name && head.name == "Maybe")
          return maybe(resolve(t.args[1], kStar, vars, mode));
        return Type::app(resolve(head, kFun, vars, mode), resolve(t.args[1], kStar, vars, mode));
      }
    }
    throw TypeError(t.pos, "bad type");
  }

  Pred resolve_pred(const PredAst& p, std::map<std::string, Type>& vars, VarMode mode) {
    Pred out{p.kind, {}};
    for (const TypeAst& a : p.args) out.args.push_back(resolve(a, kFun, vars, mode));
    if (p.kind == PredKind::Minus && p.open_output) {
      if (mode == VarMode::Flexible) {
        out.args.push_back(fresh(kFun));
      } else {
        std::string name = "~" + std::to_string(counter_++);
        Type v = Type::var(mode == VarMode::Rigid ? "!" + name : name, kFun);
        vars.emplace(name, v);
        out.args.push_back(v);
      }
    }
    return out;
  }

  // ---- unification ------------------------------------------------------

  Type fresh(Kind k) { return Type::var("t" + std::to_string(counter_++), k); }

  void unify(const Type& a0, const Type& b0, Pos pos) {
    Type a = s_.apply(a0);
    Type b = s_.apply(b0);
    if (a == b) return;
    if (a.is_var() && !is_rigid(a)) return bind(a, b, pos);
    if (b.is_var() && !is_rigid(b)) return bind(b, a, pos);
    bool same = a.tag() == b.tag() && a.name() == b.name() && a.args().size() == b.args().size() &&
                kind_of(a) == kind_of(b);
    if (!same) throw TypeError(pos, "cannot match " + show(a) + " with " + show(b));
    for (std::size_t i = 0; i < a.args().size(); ++i) unify(a.arg(i), b.arg(i), pos);
  }

  void bind(const Type& v, const Type& t, Pos pos) {
    if (kind_of(v) != kind_of(t))
      throw TypeError(pos, "kind mismatch between " + show(v) + " and " + show(t));
    if (free_vars(t).count(v.name()))
      throw TypeError(pos, "infinite type: " + show(v) + " occurs in " + show(t));
    s_.bind(v.name(), t);
  }

  static std::string show(const Type& t) {
    std::map<std::string, std::string> names;
    for (const std::string& v : free_vars(t))
      if (!v.empty() && v[0] == '!') names[v] = v.substr(1);
    return to_string(rename_vars(t, names));
  }

  // ---- constraints ------------------------------------------------------

  void add_pred(Pred p, Pos pos) { pending_.push_back({std::move(p), pos}); }

  std::string failure_trace(const Pred& p, const std::vector<Pred>& givens) {
    std::string lines;
    SolverConfig cfg = opts_.solver;
    cfg.trace = [&lines](const TraceRecord& r) { lines += "\n  " + format_trace(r); };
    try {
      solve(p, givens, cfg);
    } catch (const std::exception&) {
    }
    return lines;
  }

  // Context reduction with improvement. Returns predicates the solver
  // leaves stuck.
  std::vector<PendingPred> reduce(std::vector<PendingPred> preds, const std::vector<Pred>& givens) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<PendingPred> kept;
      for (PendingPred& pp : preds) {
        Pred q = s_.apply(pp.pred);
        bool dup = false;
        for (const PendingPred& k : kept) dup = dup || k.pred == q;
        if (dup) continue;
        Solution sol;
        try {
          sol = solve(q, givens, opts_.solver);
        } catch (const DepthExceeded& e) {
          throw TypeError(pp.pos, e.what());
        }
        if (is_fails(sol))
          throw TypeError(pp.pos, "unsatisfiable constraint " + show_pred(q) + failure_trace(q, givens));
        if (is_stuck(sol)) {
          kept.push_back({q, pp.pos});
          continue;
        }
        const Holds& h = std::get<Holds>(sol);
        if (q.kind == PredKind::Minus && h.remainder) {
          std::size_t before = s_.size();
          Subst snapshot = s_;
          try {
            unify(q.args[2], *h.remainder, pp.pos);
          } catch (const TypeError&) {
            throw TypeError(pp.pos, "improvement conflict: " + show_pred(q) + " but the remainder is " +
                                        show(s_.apply(*h.remainder)));
          }
          if (s_.size() != before || !(snapshot == s_)) changed = true;
        }
      }
      // f :-: g = h and f :-: g = h' force h = h'.
      for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = i + 1; j < kept.size(); ++j) {
          const Pred& a = kept[i].pred;
          const Pred& b = kept[j].pred;
          if (a.kind == PredKind::Minus && b.kind == PredKind::Minus && a.args[0] == b.args[0] &&
              a.args[1] == b.args[1] && a.args[2] != b.args[2]) {
            unify(a.args[2], b.args[2], kept[j].pos);
            changed = true;
          }
        }
      }
      preds = std::move(kept);
    }
    for (PendingPred& pp : preds) pp.pred = s_.apply(pp.pred);
    return preds;
  }

  static std::string show_pred(const Pred& p) {
    std::map<std::string, std::string> names;
    for (const std::string& v : free_vars(p))
      if (!v.empty() && v[0] == '!') names[v] = v.substr(1);
    return to_string(rename_vars(p, names));
  }

  // Resolves ambiguity by defaulting (if enabled) and re-reduces.
  std::vector<PendingPred> disambiguate(std::vector<PendingPred> kept, const Type& body, Pos pos,
                                        bool allow) {
    std::vector<Pred> preds;
    for (const PendingPred& pp : kept) preds.push_back(pp.pred);
    std::set<std::string> amb = ambiguous_vars(preds, free_vars(body));
    if (amb.empty() || allow) return kept;
    if (!opts_.defaulting || cp_.defaults.empty()) {
      // Reports the same way apply_defaults does when no declaration fits.
      apply_defaults(preds, amb, {}, opts_.solver);
      return kept;
    }
    Subst d = apply_defaults(preds, amb, cp_.defaults, opts_.solver);
    for (const auto& [v, t] : d.map()) {
      Type cur = s_.apply(Type::var(v, kind_of(t)));
      unify(cur, t, pos);
    }
    kept = reduce(std::move(kept), {});
    preds.clear();
    for (const PendingPred& pp : kept) preds.push_back(pp.pred);
    amb = ambiguous_vars(preds, free_vars(s_.apply(body)));
    if (!amb.empty()) apply_defaults(preds, amb, {}, opts_.solver);
    return kept;
  }

  // ---- expressions ------------------------------------------------------

  NodeInfo& node(const Expr& e) {
    touched_.push_back(e.id);
    return cp_.nodes[e.id];
  }

  Type instantiate(const Scheme& sc, NodeInfo* info, Pos pos) {
    Subst inst;
    for (const auto& [v, k] : sc.vars) {
      Type t = fresh(k);
      inst.bind(v, t);
      if (info) info->inst.emplace_back(v, t);
    }
    for (const Pred& p : sc.preds) add_pred(inst.apply(p), pos);
    return inst.apply(sc.body);
  }

  void require_exposure(const std::string& what, Pos pos) {
    if (!opts_.expose_constructors)
      throw TypeError(pos, what + " requires --expose-constructors");
  }

  std::optional<Type> builtin(const Expr& e) {
    const std::string& n = e.name;
    Pos pos = e.pos;
    if (n == "inj" || n == "inj'") {
      Type f = fresh(kFun), g = fresh(kFun), x = fresh(kStar);
      Pred p = Pred::leq(f, g);
      node(e).pred = p;
      add_pred(p, pos);
      if (n == "inj") return Type::fun(Type::app(f, x), Type::app(g, x));
      return Type::fun(Type::app(f, Type::fix(g)), Type::fix(g));
    }
    if (n == "prj") {
      Type f = fresh(kFun), g = fresh(kFun), h = fresh(kFun), x = fresh(kStar);
      Pred p = Pred::minus(f, g, h);
      node(e).pred = p;
      add_pred(p, pos);
      return Type::fun(Type::app(f, x), maybe(Type::app(g, x)));
    }
    if (n == "cases") {
      Type f = fresh(kFun), r = fresh(kStar);
      Type fx = Type::fix(f);
      Type branch = Type::fun(Type::app(f, fx), Type::fun(Type::fun(fx, r), r));
      return Type::fun(branch, Type::fun(fx, r));
    }
    if (n == "fmap") {
      Type f = fresh(kFun), a = fresh(kStar), b = fresh(kStar);
      add_pred(Pred::functor(f), pos);
      return Type::fun(Type::fun(a, b), Type::fun(Type::app(f, a), Type::app(f, b)));
    }
    if (n == "In") {
      Type f = fresh(kFun);
      return Type::fun(Type::app(f, Type::fix(f)), Type::fix(f));
    }
    if (n == "Inl" || n == "Inr") {
      require_exposure(n, pos);
      Type f = fresh(kFun), g = fresh(kFun), x = fresh(kStar);
      Type from = Type::app(n == "Inl" ? f : g, x);
      return Type::fun(from, Type::app(Type::coprod(f, g), x));
    }
    if (n == "Just") {
      Type a = fresh(kStar);
      return Type::fun(a, maybe(a));
    }
    if (n == "Nothing") return maybe(fresh(kStar));
    if (n == "const") {
      Type a = fresh(kStar), b = fresh(kStar);
      return Type::fun(a, Type::fun(b, a));
    }
    auto c = cp_.ctors.find(n);
    if (c != cp_.ctors.end()) {
      const DataDecl& d = *c->second;
      Type x = fresh(kStar);
      Type t = Type::app(Type::atom(d.functor, kFun), x);
      for (auto it = d.fields.rbegin(); it != d.fields.rend(); ++it)
        t = Type::fun(field_type(*it, x), t);
      return t;
    }
    return std::nullopt;
  }

  static Type field_type(FieldKind k, const Type& self) {
    switch (k) {
      case FieldKind::Self: return self;
      case FieldKind::Int: return Type::int_t();
      case FieldKind::Bool: return Type::bool_t();
    }
    return self;
  }

  Type infer_var(const Expr& e) {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
      if (it->name != e.name) continue;
      if (it->generic.empty()) return it->type;
      Subst inst;
      NodeInfo& info = node(e);
      for (const std::string& v : it->generic) {
        Type t = fresh(kind_of_var(it->type, v));
        inst.bind(v, t);
        info.inst.emplace_back(v, t);
      }
      return inst.apply(it->type);
    }
    if (current_ && e.name == current_->name) {
      NodeInfo& info = node(e);
      info.let_index = current_index_;
      if (current_sig_) return instantiate(*current_sig_, &info, e.pos);
      info.self_ref = true;
      current_recursive_ = true;
      return *current_type_;
    }
    auto li = cp_.let_index.find(e.name);
    if (li != cp_.let_index.end()) {
      NodeInfo& info = node(e);
      info.let_index = li->second;
      return instantiate(cp_.lets[li->second].scheme, &info, e.pos);
    }
    if (auto b = builtin(e)) return *b;
    throw TypeError(e.pos, "unbound name " + e.name);
  }

  static Kind kind_of_var(const Type& t, const std::string& v) {
    if (t.is_var() && t.name() == v) return kind_of(t);
    for (const Type& a : t.args()) {
      if (free_vars(a).count(v)) return kind_of_var(a, v);
    }
    return Kind::Star;
  }

  Type infer_pattern(const Pattern& p) {
    switch (p.tag) {
      case Pattern::Tag::Var: {
        Type t = fresh(kStar);
        locals_.push_back({p.name, t, {}});
        return t;
      }
      case Pattern::Tag::Wild:
        return fresh(kStar);
      case Pattern::Tag::Con: {
        auto c = cp_.ctors.find(p.name);
        if (c == cp_.ctors.end()) throw TypeError(p.pos, "unknown constructor " + p.name);
        const DataDecl& d = *c->second;
        if (d.fields.size() != p.subs.size())
          throw TypeError(p.pos, p.name + " expects " + std::to_string(d.fields.size()) +
                                     " arguments");
        Type x = fresh(kStar);
        for (std::size_t i = 0; i < p.subs.size(); ++i)
          unify(infer_pattern(p.subs[i]), field_type(d.fields[i], x), p.subs[i].pos);
        return Type::app(Type::atom(d.functor, kFun), x);
      }
      case Pattern::Tag::In: {
        require_exposure("the In pattern", p.pos);
        Type f = fresh(kFun);
        unify(infer_pattern(p.subs[0]), Type::app(f, Type::fix(f)), p.pos);
        return Type::fix(f);
      }
      case Pattern::Tag::Inl:
      case Pattern::Tag::Inr: {
        require_exposure(std::string("the ") + (p.tag == Pattern::Tag::Inl ? "Inl" : "Inr") + " pattern", p.pos);
        Type f = fresh(kFun), g = fresh(kFun), x = fresh(kStar);
        Type side = p.tag == Pattern::Tag::Inl ? f : g;
        unify(infer_pattern(p.subs[0]), Type::app(side, x), p.pos);
        return Type::app(Type::coprod(f, g), x);
      }
    }
    throw TypeError(p.pos, "bad pattern");
  }

  std::set<std::string> env_vars() {
    std::set<std::string> out;
    for (const Local& l : locals_) {
      for (const std::string& v : free_vars(s_.apply(l.type)))
        if (std::find(l.generic.begin(), l.generic.end(), v) == l.generic.end()) out.insert(v);
    }
    if (current_type_)
      for (const std::string& v : free_vars(s_.apply(*current_type_))) out.insert(v);
    for (const PendingPred& pp : pending_)
      for (const std::string& v : free_vars(s_.apply(pp.pred))) out.insert(v);
    return out;
  }

  Type infer(const Expr& e) {
    switch (e.tag) {
      case Expr::Tag::Int:
        return Type::int_t();
      case Expr::Tag::Bool:
        return Type::bool_t();
      case Expr::Tag::Var:
        return infer_var(e);
      case Expr::Tag::App: {
        Type f = infer(*e.kids[0]);
        Type a = infer(*e.kids[1]);
        Type r = fresh(kStar);
        unify(f, Type::fun(a, r), e.pos);
        return r;
      }
      case Expr::Tag::Lam: {
        std::size_t mark = locals_.size();
        std::vector<Type> params;
        for (const Pattern& p : e.params) params.push_back(infer_pattern(p));
        Type body = infer(*e.kids[0]);
        locals_.erase(locals_.begin() + static_cast<long>(mark), locals_.end());
        for (auto it = params.rbegin(); it != params.rend(); ++it) body = Type::fun(*it, body);
        return body;
      }
      case Expr::Tag::Let: {
        Type bound = s_.apply(infer(*e.kids[0]));
        std::set<std::string> env = env_vars();
        std::vector<std::string> generic;
        for (const std::string& v : free_vars(bound))
          if (!env.count(v) && !is_rigid(Type::var(v))) generic.push_back(v);
        node(e).generic = generic;
        locals_.push_back({e.name, bound, generic});
        Type body = infer(*e.kids[1]);
        locals_.pop_back();
        return body;
      }
      case Expr::Tag::Pair:
        return Type::pair(infer(*e.kids[0]), infer(*e.kids[1]));
      case Expr::Tag::BinOp:
        return infer_binop(e);
      case Expr::Tag::Ann: {
        Type t = infer(*e.kids[0]);
        std::map<std::string, Type> vars;
        Type want = resolve(*e.ann, kStar, vars, VarMode::Flexible);
        unify(t, want, e.pos);
        return want;
      }
    }
    throw TypeError(e.pos, "bad expression");
  }

  Type infer_binop(const Expr& e) {
    Type l = infer(*e.kids[0]);
    Type r = infer(*e.kids[1]);
    if (e.name == "+" || e.name == "*") {
      unify(l, Type::int_t(), e.kids[0]->pos);
      unify(r, Type::int_t(), e.kids[1]->pos);
      return Type::int_t();
    }
    Type x = fresh(kStar), a = fresh(kStar);
    if (e.name == "?") {
      Type f = fresh(kFun), g = fresh(kFun), h = fresh(kFun);
      unify(l, Type::fun(Type::app(g, x), a), e.kids[0]->pos);
      unify(r, Type::fun(Type::app(h, x), a), e.kids[1]->pos);
      Pred p = Pred::minus(f, g, h);
      node(e).pred = p;
      add_pred(p, e.pos);
      return Type::fun(Type::app(f, x), a);
    }
    require_exposure(".?.", e.pos);
    Type f = fresh(kFun), g = fresh(kFun);
    unify(l, Type::fun(Type::app(f, x), a), e.kids[0]->pos);
    unify(r, Type::fun(Type::app(g, x), a), e.kids[1]->pos);
    return Type::fun(Type::app(Type::coprod(f, g), x), a);
  }

  // ---- top level --------------------------------------------------------

  void normalise_nodes() {
    for (int id : touched_) {
      NodeInfo& info = cp_.nodes[id];
      if (info.pred) info.pred = s_.apply(*info.pred);
      for (auto& [v, t] : info.inst) t = s_.apply(t);
    }
    touched_.clear();
  }

  static std::vector<std::pair<std::string, Kind>> quantify(const Type& body,
                                                            const std::vector<Pred>& preds) {
    std::vector<std::string> order;
    collect_vars_ordered(body, order);
    for (const Pred& p : preds)
      for (const Type& a : p.args) collect_vars_ordered(a, order);
    std::vector<std::pair<std::string, Kind>> out;
    for (const std::string& v : order) {
      Kind k = kind_of_var(body, v);
      bool in_body = free_vars(body).count(v) != 0;
      if (!in_body) {
        for (const Pred& p : preds)
          for (const Type& a : p.args)
            if (free_vars(a).count(v)) k = kind_of_var(a, v);
      }
      out.emplace_back(v, k);
    }
    return out;
  }

  void check_let(const LetDecl& d) {
    if (cp_.let_index.count(d.name)) throw TypeError(d.pos, "duplicate definition of " + d.name);
    if (cp_.ctors.count(d.name)) throw TypeError(d.pos, d.name + " is a constructor");
    static const std::set<std::string> builtins = {"inj", "inj'", "prj", "cases", "fmap",
                                                   "const"};
    if (builtins.count(d.name)) throw TypeError(d.pos, d.name + " is a built-in");

    LetInfo info;
    info.name = d.name;
    info.decl = &d;
    int index = static_cast<int>(cp_.lets.size());

    std::optional<Scheme> sig;
    std::vector<Pred> givens;
    if (d.sig) {
      std::map<std::string, Type> kinded;
      Scheme s;
      s.body = resolve_sig_body(*d.sig, kinded);
      for (const PredAst& p : d.sig->preds) s.preds.push_back(resolve_pred(p, kinded, VarMode::Rigid));
      for (const auto& [name, t] : kinded) s.vars.emplace_back(t.name(), kind_of(t));
      for (const std::string& v : d.sig->vars)
        if (!kinded.count(v)) throw TypeError(d.pos, "quantified variable " + v + " is unused");
      sig = s;
      givens = s.preds;
    }

    current_ = &d;
    current_index_ = index;
    current_recursive_ = false;
    current_sig_ = sig ? &*sig : nullptr;
    Type self = sig ? sig->body : fresh(kStar);
    current_type_ = self;

    std::size_t mark = pending_.size();
    Type t = infer(*d.body);
    unify(self, t, d.pos);
    std::vector<PendingPred> mine(pending_.begin() + static_cast<long>(mark), pending_.end());
    pending_.resize(mark);
    current_type_.reset();
    current_ = nullptr;
    current_sig_ = nullptr;

    std::vector<PendingPred> kept = reduce(std::move(mine), givens);
    if (sig) {
      if (!kept.empty())
        throw TypeError(kept[0].pos, "could not deduce " + show_pred(kept[0].pred) +
                                         " from the signature of " + d.name);
      info.scheme = *sig;
    } else {
      Type body = s_.apply(self);
      kept = disambiguate(std::move(kept), body, d.pos, false);
      body = s_.apply(body);
      Scheme sc;
      sc.body = body;
      for (const PendingPred& pp : kept) sc.preds.push_back(s_.apply(pp.pred));
      sc.vars = quantify(body, sc.preds);
      info.scheme = sc;
    }
    info.recursive = current_recursive_;
    normalise_nodes();
    cp_.let_index.emplace(d.name, index);
    cp_.lets.push_back(std::move(info));
  }

  Type resolve_sig_body(const SchemeAst& s, std::map<std::string, Type>& vars) {
    return resolve(s.body, kStar, vars, VarMode::Rigid);
  }

  void check_main(const MainDecl& m) {
    std::size_t mark = pending_.size();
    Type t = infer(*m.body);
    std::vector<PendingPred> mine(pending_.begin() + static_cast<long>(mark), pending_.end());
    pending_.resize(mark);
    std::vector<PendingPred> kept = reduce(std::move(mine), {});
    kept = disambiguate(std::move(kept), s_.apply(t), m.pos, opts_.allow_ambiguous_main);
    MainInfo info{s_.apply(t), {}, {}};
    for (const PendingPred& pp : kept) info.preds.push_back(s_.apply(pp.pred));
    info.ambiguous = ambiguous_vars(info.preds, free_vars(info.type));
    normalise_nodes();
    cp_.main = std::move(info);
  }

  CheckedProgram& cp_;
  const CheckOptions& opts_;
  Subst s_;
  int counter_ = 0;
  std::vector<PendingPred> pending_;
  std::vector<Local> locals_;
  std::vector<int> touched_;
  const LetDecl* current_ = nullptr;
  int current_index_ = -1;
  bool current_recursive_ = false;
  const Scheme* current_sig_ = nullptr;
  std::optional<Type> current_type_;
};

}  // namespace

CheckedProgram check_program(Program prog, const CheckOptions& opts) {
  check_config(opts.solver);
  CheckedProgram cp;
  cp.prog = std::move(prog);
  cp.opts = opts;
  Checker c(cp);
  c.run();
  return cp;
}

Type resolve_closed_type(const CheckedProgram& cp, const TypeAst& t) {
  Checker c(const_cast<CheckedProgram&>(cp));
  std::map<std::string, Type> vars;
  Type out = c.resolve(t, Kind::Star, vars, VarMode::Named);
  if (!vars.empty()) throw TypeError(t.pos, "expected a closed type");
  return out;
}

namespace {

std::map<std::string, std::string> canonical_names(const Type& body, const std::vector<Pred>& preds,
                                                   std::vector<std::string>* order_out) {
  std::map<std::string, std::string> mask;
  for (const Pred& p : preds)
    for (const std::string& v : free_vars(p)) mask[v] = "_";
  for (const std::string& v : free_vars(body)) mask[v] = "_";
  std::vector<std::pair<std::string, const Pred*>> sorted;
  for (const Pred& p : preds) sorted.emplace_back(to_string(rename_vars(p, mask)), &p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> order;
  collect_vars_ordered(body, order);
  for (const auto& [key, p] : sorted)
    for (const Type& a : p->args) collect_vars_ordered(a, order);
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) names[order[i]] = nth_var_name(i);
  if (order_out) *order_out = order;
  return names;
}

}  // namespace

std::string format_scheme(const std::string& name, const Scheme& s) {
  std::vector<std::string> order;
  auto names = canonical_names(s.body, s.preds, &order);
  std::string out = name + " : ";
  std::set<std::string> quantified;
  for (const auto& [v, k] : s.vars) quantified.insert(v);
  std::string forall;
  for (const std::string& v : order)
    if (quantified.count(v)) forall += " " + names[v];
  if (!forall.empty()) out += "forall" + forall + ". ";
  if (!s.preds.empty()) {
    std::vector<std::string> ps;
    for (const Pred& p : s.preds) {
      std::string text = to_string(rename_vars(p, names));
      if (std::find(ps.begin(), ps.end(), text) == ps.end()) ps.push_back(text);
    }
    std::sort(ps.begin(), ps.end());
    out += "(";
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i];
    out += ") => ";
  }
  return out + to_string(rename_vars(s.body, names));
}

std::string format_type_canonical(const Type& t) {
  auto names = canonical_names(t, {}, nullptr);
  return to_string(rename_vars(t, names));
}

}  // namespace xv::lang
