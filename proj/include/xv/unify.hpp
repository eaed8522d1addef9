#pragma once

// First-order unification: finite mgu with occurs check, one-way matching,
// and unifiability over rational trees (no occurs check) for apartness.

#include <optional>
#include <string>

#include "xv/types.hpp"

namespace xv {

struct UnifyOutcome {
  std::optional<Subst> subst;
  std::string diagnostic;

  explicit operator bool() const { return subst.has_value(); }
};

UnifyOutcome mgu(const Type& t1, const Type& t2);

// Extends s so that s(t1) == s(t2). On failure s is left in an unspecified
// but valid state and false is returned.
bool unify_into(const Type& t1, const Type& t2, Subst& s, std::string* why = nullptr);

// Binds only variables of `pattern`; target variables are treated as
// constants. Non-linear patterns require syntactic equality.
UnifyOutcome match_onto(const Type& pattern, const Type& target);
bool match_into(const Type& pattern, const Type& target, Subst& s);

// Unification over rational trees. Family applications are compared
// structurally unless `families_as_vars`, in which case every family
// application is treated as a distinct fresh variable.
bool unifiable_infinitary(const Type& t1, const Type& t2, bool families_as_vars = false);
inline bool apart(const Type& t1, const Type& t2, bool families_as_vars = false) {
  return !unifiable_infinitary(t1, t2, families_as_vars);
}

}  // namespace xv
