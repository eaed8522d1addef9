#include "xv/types.hpp"

#include <functional>
#include <sstream>

namespace xv {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void require_kind(const Type& t, Kind expected, const char* where) {
  if (kind_of(t) != expected) {
    throw KindError(std::string(where) + ": expected kind " + to_string(expected) +
                    " but " + to_string(t) + " has kind " + to_string(kind_of(t)));
  }
}

}  // namespace

Type Type::make(TypeTag tag, std::string name, Kind kind, std::vector<Type> args) {
  std::size_t h = mix(static_cast<std::size_t>(tag), std::hash<std::string>{}(name));
  h = mix(h, static_cast<std::size_t>(kind));
  bool ground = tag != TypeTag::Var;
  bool fam = tag == TypeTag::Fam;
  int leaves = 1;
  for (const Type& a : args) {
    h = mix(h, a.hash());
    ground = ground && a.ground();
    fam = fam || a.has_family();
  }
  if (tag == TypeTag::Coprod) leaves = args[0].leaves() + args[1].leaves();
  auto node = std::make_shared<const TypeNode>(
      TypeNode{tag, kind, std::move(name), std::move(args), h, ground, fam, leaves});
  return Type(std::move(node));
}

Type Type::atom(std::string name, Kind kind) {
  return make(TypeTag::Atom, std::move(name), kind, {});
}

Type Type::var(std::string name, Kind kind) {
  return make(TypeTag::Var, std::move(name), kind, {});
}

Type Type::coprod(Type left, Type right) {
  require_kind(left, Kind::StarToStar, "coproduct operand");
  require_kind(right, Kind::StarToStar, "coproduct operand");
  return make(TypeTag::Coprod, "", Kind::StarToStar, {std::move(left), std::move(right)});
}

Type Type::fix(Type functor) {
  require_kind(functor, Kind::StarToStar, "Fix argument");
  return make(TypeTag::Fix, "", Kind::Star, {std::move(functor)});
}

Type Type::fun(Type arg, Type result) {
  require_kind(arg, Kind::Star, "function argument");
  require_kind(result, Kind::Star, "function result");
  return make(TypeTag::Fun, "", Kind::Star, {std::move(arg), std::move(result)});
}

Type Type::int_t() {
  static const Type t = make(TypeTag::Int, "", Kind::Star, {});
  return t;
}

Type Type::bool_t() {
  static const Type t = make(TypeTag::Bool, "", Kind::Star, {});
  return t;
}

Type Type::pair(Type fst, Type snd) {
  require_kind(fst, Kind::Star, "pair component");
  require_kind(snd, Kind::Star, "pair component");
  return make(TypeTag::Pair, "", Kind::Star, {std::move(fst), std::move(snd)});
}

Type Type::app(Type functor, Type arg) {
  require_kind(functor, Kind::StarToStar, "applied functor");
  require_kind(arg, Kind::Star, "functor argument");
  return make(TypeTag::App, "", Kind::Star, {std::move(functor), std::move(arg)});
}

Type Type::con(std::string name, std::vector<Type> args) {
  return make(TypeTag::Con, std::move(name), Kind::Star, std::move(args));
}

Type Type::fam(std::string name, std::vector<Type> args, Kind result) {
  return make(TypeTag::Fam, std::move(name), result, std::move(args));
}

Kind Type::kind() const { return kind_of(*this); }

Kind kind_of(const Type& t) {
  switch (t.tag()) {
    case TypeTag::Atom:
    case TypeTag::Var:
    case TypeTag::Fam:
      return t.node()->kind;
    case TypeTag::Coprod:
      return Kind::StarToStar;
    default:
      return Kind::Star;
  }
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  const TypeNode& x = *a.node_;
  const TypeNode& y = *b.node_;
  if (x.hash != y.hash || x.tag != y.tag || x.kind != y.kind || x.name != y.name) return false;
  return x.args == y.args;
}

bool operator<(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return false;
  if (a.tag() != b.tag()) return a.tag() < b.tag();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind;
  return a.args() < b.args();
}

std::string to_string(Kind k) { return k == Kind::Star ? "*" : "* -> *"; }

namespace {

bool prints_atomic(const Type& t) {
  switch (t.tag()) {
    case TypeTag::Atom:
    case TypeTag::Var:
    case TypeTag::Int:
    case TypeTag::Bool:
    case TypeTag::Pair:
      return true;
    case TypeTag::Con:
    case TypeTag::Fam:
      return t.args().empty();
    default:
      return false;
  }
}

std::string coprod_operand(const Type& t) {
  return t.is_coprod() ? "(" + to_string(t) + ")" : to_string(t);
}

}  // namespace

std::string to_string_atomic(const Type& t) {
  return prints_atomic(t) ? to_string(t) : "(" + to_string(t) + ")";
}

std::string to_string(const Type& t) {
  switch (t.tag()) {
    case TypeTag::Atom:
    case TypeTag::Var:
      return t.name();
    case TypeTag::Coprod:
      return coprod_operand(t.left()) + " :+: " + coprod_operand(t.right());
    case TypeTag::Fix:
      return "Fix " + to_string_atomic(t.arg(0));
    case TypeTag::Fun: {
      const Type& a = t.arg(0);
      std::string lhs = a.is(TypeTag::Fun) ? "(" + to_string(a) + ")" : to_string(a);
      return lhs + " -> " + to_string(t.arg(1));
    }
    case TypeTag::Int:
      return "Int";
    case TypeTag::Bool:
      return "Bool";
    case TypeTag::Pair:
      return "(" + to_string(t.arg(0)) + ", " + to_string(t.arg(1)) + ")";
    case TypeTag::App:
      return to_string_atomic(t.arg(0)) + " " + to_string_atomic(t.arg(1));
    case TypeTag::Con:
    case TypeTag::Fam: {
      std::string s = t.name();
      for (const Type& a : t.args()) s += " " + to_string_atomic(a);
      return s;
    }
  }
  return "?";
}

bool Pred::ground() const {
  for (const Type& a : args)
    if (!a.ground()) return false;
  return true;
}

std::string to_string(const Pred& p) {
  switch (p.kind) {
    case PredKind::In:
      return "In " + to_string_atomic(p.args[0]) + " " + to_string_atomic(p.args[1]);
    case PredKind::NotIn:
      return "In " + to_string_atomic(p.args[0]) + " " + to_string_atomic(p.args[1]) + " fails";
    case PredKind::Leq:
      return coprod_operand(p.args[0]) + " :<: " + coprod_operand(p.args[1]);
    case PredKind::Minus:
      return coprod_operand(p.args[0]) + " :-: " + coprod_operand(p.args[1]) + " = " +
             to_string(p.args[2]);
    case PredKind::Functor:
      return "Functor " + to_string_atomic(p.args[0]);
  }
  return "?";
}

// ---------------------------------------------------------------------------

Type replace_var(const Type& t, const std::string& name, const Type& by) {
  if (t.ground()) return t;
  if (t.is_var()) {
    if (t.name() != name) return t;
    if (kind_of(by) != t.node()->kind) {
      throw KindError("substituting " + to_string(by) + " (kind " + to_string(kind_of(by)) +
                      ") for " + name + " (kind " + to_string(t.node()->kind) + ")");
    }
    return by;
  }
  bool changed = false;
  std::vector<Type> args;
  args.reserve(t.args().size());
  for (const Type& a : t.args()) {
    args.push_back(replace_var(a, name, by));
    changed = changed || args.back() != a;
  }
  return changed ? with_args(t, std::move(args)) : t;
}

Type with_args(const Type& t, std::vector<Type> args) {
  switch (t.tag()) {
    case TypeTag::Coprod: return Type::coprod(args[0], args[1]);
    case TypeTag::Fix: return Type::fix(args[0]);
    case TypeTag::Fun: return Type::fun(args[0], args[1]);
    case TypeTag::Pair: return Type::pair(args[0], args[1]);
    case TypeTag::App: return Type::app(args[0], args[1]);
    case TypeTag::Con: return Type::con(t.name(), std::move(args));
    case TypeTag::Fam: return Type::fam(t.name(), std::move(args), t.node()->kind);
    default: return t;
  }
}


std::optional<Type> Subst::lookup(const std::string& v) const {
  auto it = map_.find(v);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Type Subst::apply(const Type& t) const {
  if (t.ground() || map_.empty()) return t;
  if (t.is_var()) {
    auto it = map_.find(t.name());
    if (it == map_.end()) return t;
    if (kind_of(it->second) != t.node()->kind) {
      throw KindError("substituting " + to_string(it->second) + " for " + t.name() +
                      " changes its kind");
    }
    return it->second;
  }
  bool changed = false;
  std::vector<Type> args;
  args.reserve(t.args().size());
  for (const Type& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || args.back() != a;
  }
  return changed ? with_args(t, std::move(args)) : t;
}

Pred Subst::apply(const Pred& p) const {
  Pred out{p.kind, {}};
  out.args.reserve(p.args.size());
  for (const Type& a : p.args) out.args.push_back(apply(a));
  return out;
}

void Subst::bind(const std::string& v, const Type& t) {
  Type rhs = apply(t);
  if (rhs.is_var() && rhs.name() == v) return;
  for (auto& [name, bound] : map_) bound = replace_var(bound, v, rhs);
  map_.insert_or_assign(v, rhs);
}

Type apply_subst(const Subst& s, const Type& t) { return s.apply(t); }

namespace {

void collect_vars(const Type& t, std::set<std::string>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Type& a : t.args()) collect_vars(a, out);
}

}  // namespace

std::set<std::string> free_vars(const Type& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Pred& p) {
  std::set<std::string> out;
  for (const Type& a : p.args) collect_vars(a, out);
  return out;
}

std::string to_string(const Subst& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.map()) {
    if (!first) out += ", ";
    first = false;
    out += v + " := " + to_string(t);
  }
  return out + "}";
}

Type rename_vars(const Type& t, const std::map<std::string, std::string>& names) {
  if (t.ground()) return t;
  if (t.is_var()) {
    auto it = names.find(t.name());
    return it == names.end() ? t : Type::var(it->second, t.node()->kind);
  }
  std::vector<Type> args;
  args.reserve(t.args().size());
  for (const Type& a : t.args()) args.push_back(rename_vars(a, names));
  return with_args(t, std::move(args));
}

Pred rename_vars(const Pred& p, const std::map<std::string, std::string>& names) {
  Pred out{p.kind, {}};
  for (const Type& a : p.args) out.args.push_back(rename_vars(a, names));
  return out;
}

std::string nth_var_name(std::size_t i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

void collect_vars_ordered(const Type& t, std::vector<std::string>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    for (const std::string& v : out)
      if (v == t.name()) return;
    out.push_back(t.name());
    return;
  }
  for (const Type& a : t.args()) collect_vars_ordered(a, out);
}

// ---------------------------------------------------------------------------

InjWitness InjWitness::refl() {
  static const InjWitness w(std::make_shared<const Node>(Node{Form::Refl, {}}));
  return w;
}

InjWitness InjWitness::l(InjWitness inner) {
  return InjWitness(std::make_shared<const Node>(Node{Form::L, {std::move(inner)}}));
}

InjWitness InjWitness::r(InjWitness inner) {
  return InjWitness(std::make_shared<const Node>(Node{Form::R, {std::move(inner)}}));
}

InjWitness InjWitness::split(InjWitness left_case, InjWitness right_case) {
  return InjWitness(std::make_shared<const Node>(
      Node{Form::Split, {std::move(left_case), std::move(right_case)}}));
}

bool operator==(const InjWitness& a, const InjWitness& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->form == b.node_->form && a.node_->kids == b.node_->kids;
}

MinusWitness MinusWitness::onl(Type rest) {
  return MinusWitness(std::make_shared<const Node>(Node{Form::Onl, std::move(rest), {}}));
}

MinusWitness MinusWitness::onr(Type rest) {
  return MinusWitness(std::make_shared<const Node>(Node{Form::Onr, std::move(rest), {}}));
}

MinusWitness MinusWitness::le(Type sibling, MinusWitness inner) {
  return MinusWitness(
      std::make_shared<const Node>(Node{Form::Le, std::move(sibling), {std::move(inner)}}));
}

MinusWitness MinusWitness::ri(Type sibling, MinusWitness inner) {
  return MinusWitness(
      std::make_shared<const Node>(Node{Form::Ri, std::move(sibling), {std::move(inner)}}));
}

MinusWitness MinusWitness::dist(MinusWitness first, MinusWitness second) {
  return MinusWitness(std::make_shared<const Node>(
      Node{Form::Dist, std::nullopt, {std::move(first), std::move(second)}}));
}

bool operator==(const MinusWitness& a, const MinusWitness& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->form == b.node_->form && a.node_->type == b.node_->type &&
         a.node_->kids == b.node_->kids;
}

std::string to_string(const InjWitness& w) {
  auto nested = [](const InjWitness& x) {
    return x.form() == InjWitness::Form::Refl ? to_string(x) : "(" + to_string(x) + ")";
  };
  switch (w.form()) {
    case InjWitness::Form::Refl: return "Refl";
    case InjWitness::Form::L: return "L " + nested(w.inner());
    case InjWitness::Form::R: return "R " + nested(w.inner());
    case InjWitness::Form::Split:
      return "Split " + nested(w.left_case()) + " " + nested(w.right_case());
  }
  return "?";
}

std::string to_string(const MinusWitness& w) {
  auto nested = [](const MinusWitness& x) { return "(" + to_string(x) + ")"; };
  switch (w.form()) {
    case MinusWitness::Form::Onl: return "Onl " + to_string_atomic(w.type());
    case MinusWitness::Form::Onr: return "Onr " + to_string_atomic(w.type());
    case MinusWitness::Form::Le:
      return "Le " + to_string_atomic(w.type()) + " " + nested(w.inner());
    case MinusWitness::Form::Ri:
      return "Ri " + to_string_atomic(w.type()) + " " + nested(w.inner());
    case MinusWitness::Form::Dist:
      return "Dist " + nested(w.first()) + " " + nested(w.second());
  }
  return "?";
}

std::string to_string(const Solution& s) {
  if (const auto* h = std::get_if<Holds>(&s)) {
    std::string out = "holds";
    if (h->inj) out += " " + to_string(*h->inj);
    if (h->minus) out += " " + to_string(*h->minus);
    if (h->remainder) out += "; remainder " + to_string(*h->remainder);
    return out;
  }
  if (is_fails(s)) return "fails";
  return "stuck";
}

// ---------------------------------------------------------------------------

namespace {

void flatten_into(const Type& t, std::vector<Type>& out) {
  if (t.is_coprod()) {
    flatten_into(t.left(), out);
    flatten_into(t.right(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Type> flatten(const Type& t) {
  if (kind_of(t) != Kind::StarToStar)
    throw KindError("flatten: " + to_string(t) + " is not a functor");
  std::vector<Type> out;
  flatten_into(t, out);
  return out;
}

int occurrences(const Type& f, const Type& g) {
  int n = f == g ? 1 : 0;
  if (g.is_coprod()) n += occurrences(f, g.left()) + occurrences(f, g.right());
  return n;
}

Type out_of(const MinusWitness& w) {
  switch (w.form()) {
    case MinusWitness::Form::Onl:
    case MinusWitness::Form::Onr:
      return w.type();
    case MinusWitness::Form::Le:
      return Type::coprod(out_of(w.inner()), w.type());
    case MinusWitness::Form::Ri:
      return Type::coprod(w.type(), out_of(w.inner()));
    case MinusWitness::Form::Dist:
      return out_of(w.second());
  }
  throw std::logic_error("out_of: bad witness");
}

}  // namespace xv
