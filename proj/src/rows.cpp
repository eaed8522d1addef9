#include "xv/rows.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace xv::rows {

using lang::Expr;
using lang::Pattern;
using lang::Pos;
using lang::TypeAst;

RowError::RowError(Pos p, const std::string& msg)
    : std::runtime_error(lang::to_string(p) + ": " + msg), pos(p) {}

namespace {

struct RType;
using RT = std::shared_ptr<const RType>;

// Var/FVar are type and functor variables; Atom a declared functor; Sigma
// a row of label -> functor name with an optional row-variable tail.
struct RType {
  enum class Tag { Var, Int, Bool, Fun, Pair, Maybe, App, Fix, Atom, FVar, Sigma };
  Tag tag = Tag::Int;
  std::string name;
  std::vector<RT> kids;
  std::map<std::string, std::string> fields;
  std::string tail;
};

using Tag = RType::Tag;

RT mk(Tag tag, std::vector<RT> kids = {}, std::string name = {}) {
  auto t = std::make_shared<RType>();
  t->tag = tag;
  t->kids = std::move(kids);
  t->name = std::move(name);
  return t;
}

RT sigma(std::map<std::string, std::string> fields, std::string tail) {
  auto t = std::make_shared<RType>();
  t->tag = Tag::Sigma;
  t->fields = std::move(fields);
  t->tail = std::move(tail);
  return t;
}

RT fun(RT a, RT b) { return mk(Tag::Fun, {std::move(a), std::move(b)}); }
RT app(RT f, RT a) { return mk(Tag::App, {std::move(f), std::move(a)}); }
RT fix(RT f) { return mk(Tag::Fix, {std::move(f)}); }

bool is_functor(const RT& t) {
  return t->tag == Tag::Atom || t->tag == Tag::FVar || t->tag == Tag::Sigma;
}

struct Scheme {
  std::vector<std::string> vars;
  std::map<std::string, std::set<std::string>> lacks;
  RT body;
};

struct Deferred {
  enum class Kind { Label, Domain };
  Kind kind;
  RT phi;
  RT psi;
  std::string rho;
  int node = -1;
  Pos pos;
};

struct Local {
  std::string name;
  RT type;
};

class Checker {
 public:
  explicit Checker(const lang::Program& prog) : prog_(prog) {}

  RowResult run() {
    for (const lang::DataDecl& d : prog_.datas) {
      if (!functors_.emplace(d.functor, &d).second)
        throw RowError(d.pos, "duplicate functor " + d.functor);
      if (!ctors_.emplace(d.ctor, &d).second) throw RowError(d.pos, "duplicate constructor " + d.ctor);
    }
    for (const lang::TypeAlias& a : prog_.aliases) {
      std::map<std::string, RT> vars;
      aliases_[a.name] = resolve(a.type, vars, false);
    }
    for (const lang::LetDecl& d : prog_.lets) check_let(d);
    if (prog_.main) {
      std::size_t mark = deferred_.size();
      RT t = infer(*prog_.main->body);
      close_deferred(mark, prog_.main->pos);
      out_.main_type = format(nullptr, generalise(t));
    }
    return std::move(out_);
  }

 private:
  // ---- substitution -----------------------------------------------------

  std::string fresh_name(char prefix) { return std::string(1, prefix) + std::to_string(counter_++); }
  RT fresh_var() { return mk(Tag::Var, {}, fresh_name('t')); }
  RT fresh_fvar() { return mk(Tag::FVar, {}, fresh_name('f')); }

  RT walk(const RT& t) const {
    if (t->tag == Tag::Var || t->tag == Tag::FVar) {
      auto it = binds_.find(t->name);
      return it == binds_.end() ? t : walk(it->second);
    }
    if (t->tag == Tag::Sigma && !t->tail.empty()) {
      auto it = row_binds_.find(t->tail);
      if (it == row_binds_.end()) return t;
      RT rest = walk(it->second);
      std::map<std::string, std::string> fields = t->fields;
      fields.insert(rest->fields.begin(), rest->fields.end());
      return sigma(std::move(fields), rest->tail);
    }
    return t;
  }

  RT zonk(const RT& t) const {
    RT w = walk(t);
    if (w->kids.empty()) return w;
    std::vector<RT> kids;
    for (const RT& k : w->kids) kids.push_back(zonk(k));
    return mk(w->tag, std::move(kids), w->name);
  }

  bool occurs(const std::string& v, const RT& t) const {
    RT w = walk(t);
    if ((w->tag == Tag::Var || w->tag == Tag::FVar) && w->name == v) return true;
    for (const RT& k : w->kids)
      if (occurs(v, k)) return true;
    return false;
  }

  void unify(const RT& a0, const RT& b0, Pos pos) {
    RT a = walk(a0);
    RT b = walk(b0);
    if (a->tag == Tag::Var || a->tag == Tag::FVar) return bind(a, b, pos);
    if (b->tag == Tag::Var || b->tag == Tag::FVar) return bind(b, a, pos);
    if (a->tag == Tag::Sigma && b->tag == Tag::Sigma) return unify_rows(a, b, pos);
    if (a->tag != b->tag || a->name != b->name || a->kids.size() != b->kids.size())
      throw RowError(pos, "cannot match " + show(a) + " with " + show(b));
    for (std::size_t i = 0; i < a->kids.size(); ++i) unify(a->kids[i], b->kids[i], pos);
  }

  void bind(const RT& v, const RT& t, Pos pos) {
    if (t->tag == v->tag && t->name == v->name) return;
    bool fv = v->tag == Tag::FVar;
    if (fv != is_functor(t)) throw RowError(pos, "kind mismatch between " + show(v) + " and " + show(t));
    if (occurs(v->name, t)) throw RowError(pos, "infinite type: " + show(v) + " occurs in " + show(t));
    binds_[v->name] = t;
  }

  void add_lacks(const std::string& rho, const std::set<std::string>& labels, Pos pos) {
    RT r = walk(sigma({}, rho));
    for (const std::string& l : labels)
      if (r->fields.count(l)) throw RowError(pos, "duplicate label " + l + " in " + show(r));
    if (!r->tail.empty()) lacks_[r->tail].insert(labels.begin(), labels.end());
  }

  void bind_row(const std::string& rho, std::map<std::string, std::string> fields,
                const std::string& tail, Pos pos) {
    if (tail == rho && !fields.empty()) throw RowError(pos, "infinite row");
    std::set<std::string> lk = lacks_[rho];
    for (const auto& [l, f] : fields)
      if (lk.count(l)) throw RowError(pos, "duplicate label " + l + ": the row already lacks it");
    row_binds_[rho] = sigma(std::move(fields), tail);
    if (!tail.empty()) lacks_[tail].insert(lk.begin(), lk.end());
  }

  void unify_rows(const RT& a, const RT& b, Pos pos) {
    std::map<std::string, std::string> only_a, only_b;
    for (const auto& [l, f] : a->fields) {
      auto it = b->fields.find(l);
      if (it == b->fields.end()) {
        only_a.emplace(l, f);
      } else if (it->second != f) {
        throw RowError(pos, "label " + l + " has components " + f + " and " + it->second);
      }
    }
    for (const auto& [l, f] : b->fields)
      if (!a->fields.count(l)) only_b.emplace(l, f);
    const std::string& ta = a->tail;
    const std::string& tb = b->tail;
    if (!ta.empty() && !tb.empty()) {
      if (ta == tb) {
        if (!only_a.empty() || !only_b.empty())
          throw RowError(pos, "rows " + show(a) + " and " + show(b) + " differ");
        return;
      }
      std::string rho = fresh_name('r');
      bind_row(ta, only_b, rho, pos);
      bind_row(tb, only_a, rho, pos);
      return;
    }
    if (!ta.empty()) {
      if (!only_a.empty()) throw RowError(pos, "closed row " + show(b) + " lacks " + only_a.begin()->first);
      return bind_row(ta, only_b, "", pos);
    }
    if (!tb.empty()) {
      if (!only_b.empty()) throw RowError(pos, "closed row " + show(a) + " lacks " + only_b.begin()->first);
      return bind_row(tb, only_a, "", pos);
    }
    if (!only_a.empty() || !only_b.empty())
      throw RowError(pos, "rows " + show(a) + " and " + show(b) + " differ");
  }

  // ---- types ------------------------------------------------------------

  std::string label_of(const std::string& functor) const { return functors_.at(functor)->ctor; }

  void add_components(const RT& t, std::map<std::string, std::string>& fields, Pos pos) {
    if (t->tag == Tag::Atom) {
      if (!fields.emplace(label_of(t->name), t->name).second)
        throw RowError(pos, "duplicate label " + label_of(t->name));
      return;
    }
    if (t->tag == Tag::Sigma) {
      for (const auto& [l, f] : t->fields)
        if (!fields.emplace(l, f).second) throw RowError(pos, "duplicate label " + l);
      if (!t->tail.empty()) throw RowError(pos, "open row in a coproduct");
      return;
    }
    throw RowError(pos, "coproduct components must be declared functors");
  }

  RT resolve(const TypeAst& t, std::map<std::string, RT>& vars, bool functor) {
    switch (t.tag) {
      case TypeAst::Tag::Var: {
        auto it = vars.find(t.name);
        if (it != vars.end()) return it->second;
        RT v = functor ? fresh_fvar() : fresh_var();
        vars.emplace(t.name, v);
        return v;
      }
      case TypeAst::Tag::Name: {
        auto a = aliases_.find(t.name);
        if (a != aliases_.end()) return a->second;
        if (functors_.count(t.name)) return mk(Tag::Atom, {}, t.name);
        throw RowError(t.pos, "unknown type " + t.name);
      }
      case TypeAst::Tag::Int: return mk(Tag::Int);
      case TypeAst::Tag::Bool: return mk(Tag::Bool);
      case TypeAst::Tag::Coprod: {
        std::map<std::string, std::string> fields;
        add_components(resolve(t.args[0], vars, true), fields, t.pos);
        add_components(resolve(t.args[1], vars, true), fields, t.pos);
        return sigma(std::move(fields), "");
      }
      case TypeAst::Tag::Fix: return fix(resolve(t.args[0], vars, true));
      case TypeAst::Tag::Fun: return fun(resolve(t.args[0], vars, false), resolve(t.args[1], vars, false));
      case TypeAst::Tag::Pair:
        return mk(Tag::Pair, {resolve(t.args[0], vars, false), resolve(t.args[1], vars, false)});
      case TypeAst::Tag::App: {
        const TypeAst& head = t.args[0];
        if (head.tag == TypeAst::Tag::Name && head.name == "Maybe")
          return mk(Tag::Maybe, {resolve(t.args[1], vars, false)});
        return app(resolve(head, vars, true), resolve(t.args[1], vars, false));
      }
    }
    throw RowError(t.pos, "bad type");
  }

  // ---- deferred label constraints ---------------------------------------

  bool try_deferred(const Deferred& d) {
    RT phi = walk(d.phi);
    if (d.kind == Deferred::Kind::Label) {
      if (phi->tag == Tag::FVar) return false;
      if (phi->tag != Tag::Atom)
        throw RowError(d.pos, "a case must handle a single constructor, not " + show(phi));
      std::string label = label_of(phi->name);
      add_lacks(d.rho, {label}, d.pos);
      unify(d.psi, sigma({{label, phi->name}}, d.rho), d.pos);
      if (d.node >= 0) out_.labels[d.node] = label;
      return true;
    }
    if (phi->tag == Tag::FVar) return false;
    if (phi->tag == Tag::Atom) {
      unify(sigma({}, d.rho), sigma({{label_of(phi->name), phi->name}}, ""), d.pos);
    } else {
      unify(sigma({}, d.rho), phi, d.pos);
    }
    return true;
  }

  void process_deferred() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < deferred_.size();) {
        if (try_deferred(deferred_[i])) {
          deferred_.erase(deferred_.begin() + static_cast<long>(i));
          progress = true;
        } else {
          ++i;
        }
      }
    }
  }

  void close_deferred(std::size_t mark, Pos pos) {
    process_deferred();
    for (std::size_t i = mark; i < deferred_.size(); ++i) {
      const Deferred& d = deferred_[i];
      if (d.kind == Deferred::Kind::Domain && walk(d.phi)->tag == Tag::FVar)
        unify(d.phi, sigma({}, d.rho), d.pos);
    }
    process_deferred();
    if (deferred_.size() > mark)
      throw RowError(deferred_.back().pos.line ? deferred_.back().pos : pos,
                     "cannot determine the constructor label here");
  }

  // ---- expressions ------------------------------------------------------

  RT instantiate(const Scheme& s) {
    std::map<std::string, std::string> names;
    for (const std::string& v : s.vars) names[v] = fresh_name(v[0]);
    for (const auto& [rv, labels] : s.lacks) lacks_[names.at(rv)] = labels;
    return rename(s.body, names);
  }

  static RT rename(const RT& t, const std::map<std::string, std::string>& names) {
    auto r = std::make_shared<RType>(*t);
    if ((t->tag == Tag::Var || t->tag == Tag::FVar) && names.count(t->name)) r->name = names.at(t->name);
    if (t->tag == Tag::Sigma && names.count(t->tail)) r->tail = names.at(t->tail);
    for (RT& k : r->kids) k = rename(k, names);
    return r;
  }

  void free_vars(const RT& t0, std::vector<std::string>& out) const {
    RT t = walk(t0);
    auto add = [&](const std::string& v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (t->tag == Tag::Var || t->tag == Tag::FVar) add(t->name);
    if (t->tag == Tag::Sigma && !t->tail.empty()) add(t->tail);
    for (const RT& k : t->kids) free_vars(k, out);
  }

  Scheme generalise(const RT& t) {
    Scheme s;
    s.body = zonk(t);
    free_vars(s.body, s.vars);
    for (const std::string& v : s.vars) {
      if (v[0] != 'r') continue;
      auto it = lacks_.find(v);
      if (it != lacks_.end() && !it->second.empty()) s.lacks[v] = it->second;
    }
    return s;
  }

  RT infer_pattern(const Pattern& p) {
    switch (p.tag) {
      case Pattern::Tag::Var: {
        RT t = fresh_var();
        locals_.push_back({p.name, t});
        return t;
      }
      case Pattern::Tag::Wild: return fresh_var();
      case Pattern::Tag::Con: {
        auto c = ctors_.find(p.name);
        if (c == ctors_.end()) throw RowError(p.pos, "unknown constructor " + p.name);
        const lang::DataDecl& d = *c->second;
        if (d.fields.size() != p.subs.size())
          throw RowError(p.pos, p.name + " expects " + std::to_string(d.fields.size()) + " arguments");
        RT e = fresh_var();
        for (std::size_t i = 0; i < p.subs.size(); ++i)
          unify(infer_pattern(p.subs[i]), field(d.fields[i], e), p.subs[i].pos);
        return app(mk(Tag::Atom, {}, d.functor), e);
      }
      default:
        throw RowError(p.pos, "coproduct patterns are not available in the row system");
    }
  }

  static RT field(lang::FieldKind k, const RT& self) {
    switch (k) {
      case lang::FieldKind::Self: return self;
      case lang::FieldKind::Int: return mk(Tag::Int);
      case lang::FieldKind::Bool: return mk(Tag::Bool);
    }
    return self;
  }

  RT builtin(const Expr& e) {
    const std::string& n = e.name;
    if (n == "inj" || n == "inj'" || n == "prj") {
      RT phi = fresh_fvar(), psi = fresh_fvar(), x = fresh_var();
      deferred_.push_back({Deferred::Kind::Label, phi, psi, fresh_name('r'), n == "prj" ? e.id : -1, e.pos});
      if (n == "inj") return fun(app(phi, x), app(psi, x));
      if (n == "inj'") return fun(app(phi, fix(psi)), fix(psi));
      return fun(app(psi, x), mk(Tag::Maybe, {app(phi, x)}));
    }
    if (n == "cases") {
      RT f = fresh_fvar(), r = fresh_var();
      RT fx = fix(f);
      return fun(fun(app(f, fx), fun(fun(fx, r), r)), fun(fx, r));
    }
    if (n == "fmap") {
      RT f = fresh_fvar(), a = fresh_var(), b = fresh_var();
      return fun(fun(a, b), fun(app(f, a), app(f, b)));
    }
    if (n == "In") {
      RT f = fresh_fvar();
      return fun(app(f, fix(f)), fix(f));
    }
    if (n == "noMatch") return fun(app(sigma({}, ""), fresh_var()), fresh_var());
    if (n == "Just") {
      RT a = fresh_var();
      return fun(a, mk(Tag::Maybe, {a}));
    }
    if (n == "Nothing") return mk(Tag::Maybe, {fresh_var()});
    if (n == "const") {
      RT a = fresh_var(), b = fresh_var();
      return fun(a, fun(b, a));
    }
    if (n == "Inl" || n == "Inr")
      throw RowError(e.pos, n + " is not available in the row system");
    auto c = ctors_.find(n);
    if (c != ctors_.end()) {
      RT x = fresh_var();
      RT t = app(mk(Tag::Atom, {}, c->second->functor), x);
      for (auto it = c->second->fields.rbegin(); it != c->second->fields.rend(); ++it)
        t = fun(field(*it, x), t);
      return t;
    }
    throw RowError(e.pos, "unbound name " + n);
  }

  RT infer(const Expr& e) {
    switch (e.tag) {
      case Expr::Tag::Int: return mk(Tag::Int);
      case Expr::Tag::Bool: return mk(Tag::Bool);
      case Expr::Tag::Var: {
        for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
          if (it->name == e.name) return it->type;
        if (current_ && e.name == *current_) return current_type_;
        auto s = schemes_.find(e.name);
        if (s != schemes_.end()) return instantiate(s->second);
        return builtin(e);
      }
      case Expr::Tag::App: {
        RT f = infer(*e.kids[0]);
        RT a = infer(*e.kids[1]);
        RT r = fresh_var();
        unify(f, fun(a, r), e.pos);
        process_deferred();
        return r;
      }
      case Expr::Tag::Lam: {
        std::size_t mark = locals_.size();
        std::vector<RT> params;
        for (const Pattern& p : e.params) params.push_back(infer_pattern(p));
        RT body = infer(*e.kids[0]);
        locals_.erase(locals_.begin() + static_cast<long>(mark), locals_.end());
        for (auto it = params.rbegin(); it != params.rend(); ++it) body = fun(*it, body);
        return body;
      }
      case Expr::Tag::Let: {
        RT bound = infer(*e.kids[0]);
        locals_.push_back({e.name, bound});
        RT body = infer(*e.kids[1]);
        locals_.pop_back();
        return body;
      }
      case Expr::Tag::Pair: return mk(Tag::Pair, {infer(*e.kids[0]), infer(*e.kids[1])});
      case Expr::Tag::BinOp: return infer_binop(e);
      case Expr::Tag::Ann: {
        RT t = infer(*e.kids[0]);
        std::map<std::string, RT> vars;
        RT want = resolve(*e.ann, vars, false);
        unify(t, want, e.pos);
        process_deferred();
        return want;
      }
    }
    throw RowError(e.pos, "bad expression");
  }

  RT infer_binop(const Expr& e) {
    if (e.name == ".?.") throw RowError(e.pos, ".?. is not available in the row system");
    RT l = infer(*e.kids[0]);
    RT r = infer(*e.kids[1]);
    if (e.name == "+" || e.name == "*") {
      unify(l, mk(Tag::Int), e.kids[0]->pos);
      unify(r, mk(Tag::Int), e.kids[1]->pos);
      return mk(Tag::Int);
    }
    RT x = fresh_var(), a = fresh_var();
    RT fm = fresh_fvar(), fn = fresh_fvar(), out = fresh_fvar();
    unify(l, fun(app(fm, x), a), e.kids[0]->pos);
    unify(r, fun(app(fn, x), a), e.kids[1]->pos);
    std::string rho = fresh_name('r');
    deferred_.push_back({Deferred::Kind::Label, fm, out, rho, e.id, e.kids[0]->pos});
    deferred_.push_back({Deferred::Kind::Domain, fn, nullptr, rho, -1, e.kids[1]->pos});
    process_deferred();
    return fun(app(out, x), a);
  }

  void check_let(const lang::LetDecl& d) {
    if (schemes_.count(d.name)) throw RowError(d.pos, "duplicate definition of " + d.name);
    std::size_t mark = deferred_.size();
    RT self = fresh_var();
    current_ = &d.name;
    current_type_ = self;
    RT t = infer(*d.body);
    unify(self, t, d.pos);
    if (d.sig) {
      std::map<std::string, RT> vars;
      unify(t, resolve(d.sig->body, vars, false), d.pos);
    }
    current_ = nullptr;
    close_deferred(mark, d.pos);
    Scheme s = generalise(t);
    out_.lets.emplace_back(d.name, format(&d.name, s));
    schemes_.emplace(d.name, std::move(s));
  }

  // ---- printing ---------------------------------------------------------

  std::string show(const RT& t) const { return print(zonk(t), nullptr); }

  std::string print(const RT& t, const std::map<std::string, std::string>* names) const {
    auto nm = [&](const std::string& v) {
      if (names && names->count(v)) return names->at(v);
      return v;
    };
    auto atomic = [&](const RT& k) {
      std::string s = print(k, names);
      bool simple = k->kids.empty() || k->tag == Tag::Pair;
      return simple ? s : "(" + s + ")";
    };
    switch (t->tag) {
      case Tag::Var:
      case Tag::FVar: return nm(t->name);
      case Tag::Int: return "Int";
      case Tag::Bool: return "Bool";
      case Tag::Atom: return t->name;
      case Tag::Fun: {
        std::string l = print(t->kids[0], names);
        if (t->kids[0]->tag == Tag::Fun) l = "(" + l + ")";
        return l + " -> " + print(t->kids[1], names);
      }
      case Tag::Pair: return "(" + print(t->kids[0], names) + ", " + print(t->kids[1], names) + ")";
      case Tag::Maybe: return "Maybe " + atomic(t->kids[0]);
      case Tag::App: return atomic(t->kids[0]) + " " + atomic(t->kids[1]);
      case Tag::Fix: return "Fix " + atomic(t->kids[0]);
      case Tag::Sigma: {
        std::string s = "Σ(";
        bool first = true;
        for (const auto& [l, f] : t->fields) {
          s += (first ? "" : ", ") + l + ": " + f;
          first = false;
        }
        if (!t->tail.empty()) s += (first ? "" : " | ") + nm(t->tail);
        return s + ")";
      }
    }
    return "?";
  }

  std::string format(const std::string* name, const Scheme& s) const {
    std::map<std::string, std::string> names;
    for (std::size_t i = 0; i < s.vars.size(); ++i) names[s.vars[i]] = nth_var_name(i);
    std::string out = name ? *name + " : " : "";
    if (name && !s.vars.empty()) {
      out += "forall";
      for (const std::string& v : s.vars) out += " " + names[v];
      out += ". ";
    }
    std::vector<std::string> preds;
    for (const auto& [rv, labels] : s.lacks)
      for (const std::string& l : labels) preds.push_back(names[rv] + " \\ " + l);
    std::sort(preds.begin(), preds.end());
    if (name && !preds.empty()) {
      out += "(";
      for (std::size_t i = 0; i < preds.size(); ++i) out += (i ? ", " : "") + preds[i];
      out += ") => ";
    }
    return out + print(s.body, &names);
  }

  const lang::Program& prog_;
  std::map<std::string, const lang::DataDecl*> functors_;
  std::map<std::string, const lang::DataDecl*> ctors_;
  std::map<std::string, RT> aliases_;
  std::map<std::string, Scheme> schemes_;
  std::map<std::string, RT> binds_;
  std::map<std::string, RT> row_binds_;
  std::map<std::string, std::set<std::string>> lacks_;
  std::vector<Deferred> deferred_;
  std::vector<Local> locals_;
  const std::string* current_ = nullptr;
  RT current_type_;
  int counter_ = 0;
  RowResult out_;
};

}  // namespace

RowResult infer_rows(const lang::Program& prog) { return Checker(prog).run(); }

}  // namespace xv::rows
