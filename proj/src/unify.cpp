#include "xv/unify.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace xv {

namespace {

bool same_head(const Type& a, const Type& b) {
  return a.tag() == b.tag() && a.name() == b.name() && a.args().size() == b.args().size() &&
         kind_of(a) == kind_of(b);
}

bool occurs(const std::string& v, const Type& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.name() == v;
  for (const Type& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

bool bind_var(const Type& var, const Type& t, Subst& s, std::string* why) {
  if (kind_of(var) != kind_of(t)) {
    if (why) *why = "kind mismatch: " + var.name() + " and " + to_string(t);
    return false;
  }
  if (occurs(var.name(), t)) {
    if (why) *why = "occurs check: " + var.name() + " in " + to_string(t);
    return false;
  }
  s.bind(var.name(), t);
  return true;
}

bool unify_step(const Type& t1, const Type& t2, Subst& s, std::string* why) {
  Type a = s.apply(t1);
  Type b = s.apply(t2);
  if (a == b) return true;
  if (a.is_var()) return bind_var(a, b, s, why);
  if (b.is_var()) return bind_var(b, a, s, why);
  if (!same_head(a, b)) {
    if (why) *why = "cannot unify " + to_string(a) + " with " + to_string(b);
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!unify_step(a.arg(i), b.arg(i), s, why)) return false;
  return true;
}

}  // namespace

bool unify_into(const Type& t1, const Type& t2, Subst& s, std::string* why) {
  return unify_step(t1, t2, s, why);
}

UnifyOutcome mgu(const Type& t1, const Type& t2) {
  UnifyOutcome out;
  Subst s;
  if (unify_step(t1, t2, s, &out.diagnostic)) out.subst = std::move(s);
  return out;
}

bool match_into(const Type& pattern, const Type& target, Subst& s) {
  if (pattern.ground()) return pattern == target;
  if (pattern.is_var()) {
    if (auto bound = s.lookup(pattern.name())) return *bound == target;
    if (kind_of(pattern) != kind_of(target)) return false;
    s.bind(pattern.name(), target);
    return true;
  }
  if (!same_head(pattern, target)) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.arg(i), target.arg(i), s)) return false;
  return true;
}

UnifyOutcome match_onto(const Type& pattern, const Type& target) {
  UnifyOutcome out;
  Subst s;
  if (match_into(pattern, target, s))
    out.subst = std::move(s);
  else
    out.diagnostic = to_string(pattern) + " does not match " + to_string(target);
  return out;
}

namespace {

// Union-find over term nodes. Each class remembers one non-variable
// representative (if any) so that structure is compared once per merge.
class RationalUnifier {
 public:
  explicit RationalUnifier(bool families_as_vars) : fam_vars_(families_as_vars) {}

  bool unify(const Type& a, const Type& b) {
    std::vector<std::pair<int, int>> work{{node(a), node(b)}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      int rx = find(x), ry = find(y);
      if (rx == ry) continue;
      Cls& cx = classes_[rx];
      Cls& cy = classes_[ry];
      if (cx.kind != cy.kind) return false;
      if (!cx.structure) {
        parent_[rx] = ry;
        continue;
      }
      if (!cy.structure) {
        parent_[ry] = rx;
        continue;
      }
      const Type sx = *cx.structure;
      const Type sy = *cy.structure;
      if (!same_head(sx, sy)) return false;
      parent_[rx] = ry;
      for (std::size_t i = 0; i < sx.args().size(); ++i)
        work.emplace_back(node(sx.arg(i)), node(sy.arg(i)));
    }
    return true;
  }

 private:
  struct Cls {
    Kind kind;
    std::optional<Type> structure;
  };

  int fresh(Kind k, std::optional<Type> structure) {
    classes_.push_back({k, std::move(structure)});
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(classes_.size()) - 1;
  }

  int node(const Type& t) {
    if (t.is_var()) {
      auto it = vars_.find(t.name());
      if (it != vars_.end()) return it->second;
      int id = fresh(kind_of(t), std::nullopt);
      vars_.emplace(t.name(), id);
      return id;
    }
    if (fam_vars_ && t.is(TypeTag::Fam)) return fresh(kind_of(t), std::nullopt);
    auto it = nodes_.find(t.node());
    if (it != nodes_.end()) return it->second;
    int id = fresh(kind_of(t), t);
    nodes_.emplace(t.node(), id);
    return id;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool fam_vars_;
  std::vector<Cls> classes_;
  std::vector<int> parent_;
  std::unordered_map<std::string, int> vars_;
  std::unordered_map<const TypeNode*, int> nodes_;
};

}  // namespace

bool unifiable_infinitary(const Type& t1, const Type& t2, bool families_as_vars) {
  if (!families_as_vars || (!t1.has_family() && !t2.has_family())) {
    if (t1.ground() && t2.ground()) return t1 == t2;
  }
  RationalUnifier u(families_as_vars);
  return u.unify(t1, t2);
}

}  // namespace xv
