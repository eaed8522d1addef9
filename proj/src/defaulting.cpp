#include "xv/defaulting.hpp"

#include <algorithm>

#include "xv/unify.hpp"

namespace xv {

DefaultDecl make_default(const Type& templ, const Type& subtrahend, const Type& out,
                         std::string text) {
  std::set<std::string> covered = free_vars(subtrahend);
  for (const std::string& v : free_vars(out)) covered.insert(v);
  for (const std::string& v : free_vars(templ))
    if (!covered.count(v))
      throw std::invalid_argument("default template variable " + v +
                                  " does not occur in the pattern");
  DefaultDecl d;
  d.head = "?head";
  d.pattern = Pred::minus(Type::var(d.head), subtrahend, out);
  d.templ = templ;
  d.text = text.empty() ? "default ((" + to_string(templ) + ") :-: " + to_string(subtrahend) +
                              " = " + to_string(out) + ")"
                        : std::move(text);
  return d;
}

DefaultDecl standard_default() {
  Type g = Type::var("g"), h = Type::var("h");
  return make_default(Type::coprod(g, h), g, h, "default ((g :+: h) :-: g = h)");
}

void validate_default(const DefaultDecl& d, const SolverConfig& cfg) {
  std::map<std::string, std::string> fresh;
  Subst s;
  int n = 0;
  for (const std::string& v : free_vars(d.templ)) {
    std::string atom = "Fresh" + std::to_string(n++);
    s.bind(v, Type::atom(atom));
  }
  for (const std::string& v : free_vars(d.pattern.args[2]))
    if (!s.contains(v)) s.bind(v, Type::atom("Fresh" + std::to_string(n++)));
  Type f = s.apply(d.templ);
  Type g = s.apply(d.pattern.args[1]);
  Type h = s.apply(d.pattern.args[2]);
  Solution sol = solve(Pred::minus(f, g, Type::var("out")), {}, cfg);
  const Holds* held = std::get_if<Holds>(&sol);
  if (!held || !held->remainder || *held->remainder != h)
    throw InvalidDefault(d.text + " is not sensible: " + to_string(f) + " :-: " + to_string(g) +
                         " does not leave " + to_string(h));
}

std::set<std::string> ambiguous_vars(const std::vector<Pred>& preds,
                                     const std::set<std::string>& determined) {
  std::set<std::string> closure = determined;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Pred& p : preds) {
      if (p.kind != PredKind::Minus) continue;
      bool known = true;
      for (int i = 0; i < 2 && known; ++i)
        for (const std::string& v : free_vars(p.args[i]))
          if (!closure.count(v)) known = false;
      if (!known) continue;
      for (const std::string& v : free_vars(p.args[2])) grew = closure.insert(v).second || grew;
    }
  }
  std::set<std::string> out;
  for (const Pred& p : preds)
    for (const std::string& v : free_vars(p))
      if (!closure.count(v)) out.insert(v);
  return out;
}

std::set<std::string> find_ambiguous(const Scheme& s) {
  std::set<std::string> quantified;
  for (const auto& [v, k] : s.vars) quantified.insert(v);
  std::set<std::string> determined = free_vars(s.body);
  for (const Pred& p : s.preds)
    for (const std::string& v : free_vars(p))
      if (!quantified.count(v)) determined.insert(v);
  return ambiguous_vars(s.preds, determined);
}

namespace {

bool mentions_any(const Pred& p, const std::set<std::string>& vars) {
  for (const std::string& v : free_vars(p))
    if (vars.count(v)) return true;
  return false;
}

// Improves output positions of :-: predicates whose inputs became ground.
void improve_ground(const std::vector<Pred>& preds, Subst& s, const SolverConfig& cfg) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Pred& p : preds) {
      Pred q = s.apply(p);
      if (q.kind != PredKind::Minus || !q.args[0].ground() || !q.args[1].ground() ||
          q.args[2].ground())
        continue;
      Solution sol = solve(q, {}, cfg);
      const Holds* h = std::get_if<Holds>(&sol);
      if (!h || !h->remainder) continue;
      if (!unify_into(q.args[2], *h->remainder, s))
        throw ResidualError("after defaulting, " + to_string(q) + " cannot hold (remainder " +
                            to_string(*h->remainder) + ")");
      changed = true;
    }
  }
}

}  // namespace

Subst apply_defaults(const std::vector<Pred>& preds, const std::set<std::string>& ambiguous,
                     const std::vector<DefaultDecl>& decls, const SolverConfig& cfg) {
  Subst s;
  std::set<std::string> remaining = ambiguous;
  bool progress = true;
  while (progress && !remaining.empty()) {
    progress = false;
    for (const std::string& v : std::set<std::string>(remaining)) {
      std::vector<Type> candidates;
      for (const Pred& p : preds) {
        Pred q = s.apply(p);
        if (q.kind != PredKind::Minus || !q.args[0].is_var() || q.args[0].name() != v) continue;
        if (!q.args[1].ground() || !q.args[2].ground()) continue;
        for (const DefaultDecl& d : decls) {
          Subst b;
          if (!match_into(d.pattern.args[1], q.args[1], b) ||
              !match_into(d.pattern.args[2], q.args[2], b))
            continue;
          Type c = b.apply(d.templ);
          if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
            candidates.push_back(c);
        }
      }
      if (candidates.size() > 1) {
        std::sort(candidates.begin(), candidates.end(),
                  [](const Type& a, const Type& b) { return to_string(a) < to_string(b); });
        throw ConflictError("conflicting defaults for ambiguous type variable: " +
                            to_string(candidates[0]) + " and " + to_string(candidates[1]));
      }
      if (candidates.size() == 1 && !s.contains(v)) {
        s.bind(v, candidates[0]);
        remaining.erase(v);
        progress = true;
      }
    }
    if (progress) improve_ground(preds, s, cfg);
    for (const std::string& v : std::set<std::string>(remaining))
      if (s.contains(v)) remaining.erase(v);
  }

  if (!remaining.empty()) {
    std::vector<Pred> involved;
    for (const Pred& p : preds) {
      Pred q = s.apply(p);
      if (mentions_any(q, remaining)) involved.push_back(q);
    }
    std::map<std::string, std::string> names;
    std::string listed = describe_constraints(involved, &names);
    std::vector<std::string> vars(remaining.begin(), remaining.end());
    std::vector<std::string> renamed;
    for (const std::string& v : vars) renamed.push_back(names.count(v) ? names[v] : v);
    std::sort(renamed.begin(), renamed.end());
    std::string shown;
    for (const std::string& v : renamed) shown += (shown.empty() ? "" : ", ") + v;
    throw AmbiguityError(vars, involved,
                         "ambiguous type variable" + std::string(vars.size() > 1 ? "s " : " ") +
                             shown + " subject to " + listed);
  }

  for (const Pred& p : preds) {
    if (!mentions_any(p, ambiguous)) continue;
    Pred q = s.apply(p);
    Solution sol = solve(q, {}, cfg);
    if (is_fails(sol) || (is_stuck(sol) && q.ground()))
      throw ResidualError("after defaulting, " + to_string(q) + " does not hold");
    const Holds* h = std::get_if<Holds>(&sol);
    if (h && q.kind == PredKind::Minus && h->remainder && !unify_into(q.args[2], *h->remainder, s))
      throw ResidualError("after defaulting, " + to_string(q) + " has remainder " +
                          to_string(*h->remainder));
  }
  return s;
}

std::string describe_constraints(const std::vector<Pred>& preds,
                                 std::map<std::string, std::string>* renaming) {
  std::vector<std::string> names;
  for (const Pred& p : preds)
    for (const std::string& v : free_vars(p)) names.push_back(v);
  std::map<std::string, std::string> mask;
  for (const std::string& v : names) mask[v] = "_";
  std::vector<std::pair<std::string, const Pred*>> order;
  for (const Pred& p : preds) order.emplace_back(to_string(rename_vars(p, mask)), &p);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> seen;
  for (const auto& [key, p] : order)
    for (const Type& a : p->args) collect_vars_ordered(a, seen);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < seen.size(); ++i) rename[seen[i]] = nth_var_name(i);
  std::vector<std::string> shown;
  for (const Pred& p : preds) {
    std::string s = to_string(rename_vars(p, rename));
    if (std::find(shown.begin(), shown.end(), s) == shown.end()) shown.push_back(s);
  }
  std::sort(shown.begin(), shown.end());
  std::string out;
  for (const std::string& s : shown) out += (out.empty() ? "" : ", ") + s;
  if (renaming) *renaming = rename;
  return out;
}

}  // namespace xv
