#pragma once

// Ambiguity detection and generalized defaulting declarations of the form
//   default ((g :+: h) :-: g = h)
// which instantiate an ambiguous f constrained by f :-: t = u (t, u ground)
// to the template t :+: u.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/solver.hpp"
#include "xv/types.hpp"

namespace xv {

struct DefaultDecl {
  // Pattern MinusP(head, g, h); the head variable is instantiated to
  // `templ` under the bindings of the other fields.
  Pred pattern;
  std::string head;
  Type templ = Type::int_t();
  std::string text;
};

// Builds the declaration written `(T) :-: g = h`. Throws std::invalid_argument
// if a template variable is missing from the pattern.
DefaultDecl make_default(const Type& templ, const Type& subtrahend, const Type& out,
                         std::string text = {});

// The declaration `default ((g :+: h) :-: g = h)`.
DefaultDecl standard_default();

struct InvalidDefault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Substitutes distinct fresh atoms for the template variables and checks
// that T :-: g = h holds with the declared output. Throws InvalidDefault.
void validate_default(const DefaultDecl& d, const SolverConfig& cfg);

struct AmbiguityError : std::runtime_error {
  AmbiguityError(std::vector<std::string> vars, std::vector<Pred> constraints, std::string msg)
      : std::runtime_error(std::move(msg)), vars(std::move(vars)),
        constraints(std::move(constraints)) {}
  std::vector<std::string> vars;
  std::vector<Pred> constraints;
};

struct ConflictError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResidualError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variables of the predicates not reachable from `determined` by the
// functional dependency of :-: (f and g determine the output).
std::set<std::string> ambiguous_vars(const std::vector<Pred>& preds,
                                     const std::set<std::string>& determined);

// Quantified variables of the scheme's predicates that its body does not
// determine.
std::set<std::string> find_ambiguous(const Scheme& s);

// Instantiates every ambiguous variable from matching declarations, then
// re-solves all predicates (with improvement). The result binds each
// ambiguous variable plus any output positions improved along the way.
Subst apply_defaults(const std::vector<Pred>& preds, const std::set<std::string>& ambiguous,
                     const std::vector<DefaultDecl>& decls, const SolverConfig& cfg);

// "Const :<: a, Sum :<: a, a :-: Const = Sum": sorted, variables renamed
// a, b, ... by first occurrence.
// `renaming` receives the variable names used.
std::string describe_constraints(const std::vector<Pred>& preds,
                                 std::map<std::string, std::string>* renaming = nullptr);

}  // namespace xv
