#pragma once

// Kinded type expressions, predicates, substitutions, schemes and the
// evidence vocabulary (injection and subtraction witnesses) shared by the
// chain and family solvers.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xv {

enum class Kind { Star, StarToStar };

struct KindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TypeTag { Atom, Var, Coprod, Fix, Fun, Int, Bool, Pair, App, Con, Fam };

struct TypeNode;

// Immutable, structurally compared type tree. Copies share nodes.
//
//   Atom  named functor (or opaque solver-level constant)
//   Var   type variable
//   Coprod  f :+: g
//   Fix   Fix f
//   Fun   a -> b
//   Int, Bool
//   Pair  (a, b)
//   App   f e   (functor application)
//   Con   named ground constructor applied to arguments: witness forms
//         (Refl, L p, Onl h, Yep, Nope ...) during family reduction, Maybe
//   Fam   type family application (family-solver intermediate forms only)
class Type {
 public:
  static Type atom(std::string name, Kind kind = Kind::StarToStar);
  static Type var(std::string name, Kind kind = Kind::StarToStar);
  static Type coprod(Type left, Type right);
  static Type fix(Type functor);
  static Type fun(Type arg, Type result);
  static Type int_t();
  static Type bool_t();
  static Type pair(Type fst, Type snd);
  static Type app(Type functor, Type arg);
  static Type con(std::string name, std::vector<Type> args = {});
  static Type fam(std::string name, std::vector<Type> args, Kind result);

  TypeTag tag() const;
  const std::string& name() const;
  const std::vector<Type>& args() const;
  const Type& arg(std::size_t i) const { return args()[i]; }
  // Coprod accessors.
  const Type& left() const { return arg(0); }
  const Type& right() const { return arg(1); }

  Kind kind() const;
  bool is(TypeTag t) const { return tag() == t; }
  bool is_var() const { return is(TypeTag::Var); }
  bool is_coprod() const { return is(TypeTag::Coprod); }
  // No type variables anywhere in the tree.
  bool ground() const;
  // Contains a family application.
  bool has_family() const;
  std::size_t hash() const;
  // Number of maximal non-coproduct subtrees (1 for anything but Coprod).
  int leaves() const;

  const TypeNode* node() const { return node_.get(); }

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  // Arbitrary but total order, used for canonical sorting.
  friend bool operator<(const Type& a, const Type& b);

 private:
  explicit Type(std::shared_ptr<const TypeNode> n) : node_(std::move(n)) {}
  static Type make(TypeTag tag, std::string name, Kind kind, std::vector<Type> args);
  std::shared_ptr<const TypeNode> node_;
};

struct TypeNode {
  TypeTag tag;
  Kind kind;
  std::string name;
  std::vector<Type> args;
  std::size_t hash;
  bool ground;
  bool has_family;
  int leaves;
};

inline TypeTag Type::tag() const { return node_->tag; }
inline const std::string& Type::name() const { return node_->name; }
inline const std::vector<Type>& Type::args() const { return node_->args; }
inline bool Type::ground() const { return node_->ground; }
inline bool Type::has_family() const { return node_->has_family; }
inline std::size_t Type::hash() const { return node_->hash; }
inline int Type::leaves() const { return node_->leaves; }

Kind kind_of(const Type& t);

std::string to_string(const Type& t);
// Parenthesised unless the printed form is a single token or already
// bracketed.
std::string to_string_atomic(const Type& t);
std::string to_string(Kind k);

// ---------------------------------------------------------------------------
// Predicates

enum class PredKind { In, NotIn, Leq, Minus, Functor };

// In(f, g) | NotIn(f, g) | Leq(f, g) | Minus(f, g, out) | Functor(f)
struct Pred {
  PredKind kind;
  std::vector<Type> args;

  static Pred in(Type f, Type g) { return {PredKind::In, {std::move(f), std::move(g)}}; }
  static Pred not_in(Type f, Type g) { return {PredKind::NotIn, {std::move(f), std::move(g)}}; }
  static Pred leq(Type f, Type g) { return {PredKind::Leq, {std::move(f), std::move(g)}}; }
  static Pred minus(Type f, Type g, Type out) {
    return {PredKind::Minus, {std::move(f), std::move(g), std::move(out)}};
  }
  static Pred functor(Type f) { return {PredKind::Functor, {std::move(f)}}; }

  bool ground() const;

  friend bool operator==(const Pred& a, const Pred& b) {
    return a.kind == b.kind && a.args == b.args;
  }
  friend bool operator!=(const Pred& a, const Pred& b) { return !(a == b); }
};

std::string to_string(const Pred& p);

// ---------------------------------------------------------------------------
// Substitutions

// Finite map from variable names to types. Kept idempotent: every bound
// type is already fully substituted and mentions no bound variable.
class Subst {
 public:
  Subst() = default;

  std::optional<Type> lookup(const std::string& v) const;
  bool contains(const std::string& v) const { return map_.count(v) != 0; }

  // Extends the substitution with v := t (t is first rewritten by the
  // current bindings, and existing bindings are rewritten by v := t).
  // Throws KindError if t's kind disagrees with an occurrence of v in an
  // existing binding.
  void bind(const std::string& v, const Type& t);

  Type apply(const Type& t) const;
  Pred apply(const Pred& p) const;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Type>& map() const { return map_; }

  friend bool operator==(const Subst& a, const Subst& b) { return a.map_ == b.map_; }

 private:
  std::map<std::string, Type> map_;
};

Type apply_subst(const Subst& s, const Type& t);
std::set<std::string> free_vars(const Type& t);
std::set<std::string> free_vars(const Pred& p);
// Same constructor as t over new children (Coprod, Fix, Fun, Pair, App, Con, Fam).
Type with_args(const Type& t, std::vector<Type> args);
// Replace variable `name` by `by` everywhere in t (kind-checked).
Type replace_var(const Type& t, const std::string& name, const Type& by);

std::string to_string(const Subst& s);

// Simultaneous renaming of variables (kinds preserved).
Type rename_vars(const Type& t, const std::map<std::string, std::string>& names);
Pred rename_vars(const Pred& p, const std::map<std::string, std::string>& names);
// a, b, ..., z, a1, b1, ...
std::string nth_var_name(std::size_t i);
// Variables in order of first occurrence, left to right.
void collect_vars_ordered(const Type& t, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Schemes

struct Scheme {
  std::vector<std::pair<std::string, Kind>> vars;
  std::vector<Pred> preds;
  Type body = Type::int_t();
};

// ---------------------------------------------------------------------------
// Evidence

class InjWitness {
 public:
  enum class Form { Refl, L, R, Split };

  static InjWitness refl();
  static InjWitness l(InjWitness inner);
  static InjWitness r(InjWitness inner);
  static InjWitness split(InjWitness left_case, InjWitness right_case);

  Form form() const { return node_->form; }
  // L and R.
  const InjWitness& inner() const { return node_->kids.at(0); }
  const InjWitness& left_case() const { return node_->kids.at(0); }
  const InjWitness& right_case() const { return node_->kids.at(1); }

  friend bool operator==(const InjWitness& a, const InjWitness& b);
  friend bool operator!=(const InjWitness& a, const InjWitness& b) { return !(a == b); }

 private:
  struct Node {
    Form form;
    std::vector<InjWitness> kids;
  };
  explicit InjWitness(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class MinusWitness {
 public:
  enum class Form { Onl, Onr, Le, Ri, Dist };

  // Subtrahend on the left (rest is the right summand) / on the right.
  static MinusWitness onl(Type rest);
  static MinusWitness onr(Type rest);
  // Subtrahend found inside the left summand; `sibling` is the right one.
  static MinusWitness le(Type sibling, MinusWitness inner);
  // Subtrahend found inside the right summand; `sibling` is the left one.
  static MinusWitness ri(Type sibling, MinusWitness inner);
  // f :-: (g :+: h) computed as (f :-: g) :-: h.
  static MinusWitness dist(MinusWitness first, MinusWitness second);

  Form form() const { return node_->form; }
  // Onl/Onr: rest. Le/Ri: sibling.
  const Type& type() const { return *node_->type; }
  const MinusWitness& inner() const { return node_->kids.at(0); }
  // Dist only.
  const MinusWitness& first() const { return node_->kids.at(0); }
  const MinusWitness& second() const { return node_->kids.at(1); }

  friend bool operator==(const MinusWitness& a, const MinusWitness& b);
  friend bool operator!=(const MinusWitness& a, const MinusWitness& b) { return !(a == b); }

 private:
  struct Node {
    Form form;
    std::optional<Type> type;
    std::vector<MinusWitness> kids;
  };
  explicit MinusWitness(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const InjWitness& w);
std::string to_string(const MinusWitness& w);

// ---------------------------------------------------------------------------
// Solver outcomes

struct Holds {
  std::optional<InjWitness> inj;
  std::optional<MinusWitness> minus;
  std::optional<Type> remainder;

  friend bool operator==(const Holds& a, const Holds& b) {
    return a.inj == b.inj && a.minus == b.minus && a.remainder == b.remainder;
  }
};

struct Fails {
  friend bool operator==(const Fails&, const Fails&) { return true; }
};

// The reason is diagnostic only; two Stuck values compare equal.
struct Stuck {
  std::string reason;
  friend bool operator==(const Stuck&, const Stuck&) { return true; }
};

using Solution = std::variant<Holds, Fails, Stuck>;

inline bool is_holds(const Solution& s) { return std::holds_alternative<Holds>(s); }
inline bool is_fails(const Solution& s) { return std::holds_alternative<Fails>(s); }
inline bool is_stuck(const Solution& s) { return std::holds_alternative<Stuck>(s); }

// "holds <witness>[; remainder <type>]" | "fails" | "stuck"
std::string to_string(const Solution& s);

// ---------------------------------------------------------------------------
// Coproduct structure

// In-order maximal non-coproduct subtrees. Throws KindError for ground-kinded t.
std::vector<Type> flatten(const Type& t);

// Number of subtrees of g (g included) syntactically equal to f.
int occurrences(const Type& f, const Type& g);

// Remainder type described by a subtraction witness.
Type out_of(const MinusWitness& w);

}  // namespace xv

template <>
struct std::hash<xv::Type> {
  std::size_t operator()(const xv::Type& t) const noexcept { return t.hash(); }
};
