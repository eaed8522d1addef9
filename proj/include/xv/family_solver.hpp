#pragma once

// Closed type family rewriting: IsIn/Or, Into/Ifi, Minus/Ifm/OutOf.
// Witnesses (Yep, Nope, Refl, L p, Onl h, Le g p ...) are Con types while
// rewriting and are converted to InjWitness / MinusWitness on exit.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/chain_solver.hpp"
#include "xv/types.hpp"

namespace xv {

struct UnknownFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyEquation {
  std::string id;
  std::vector<Type> lhs;
  Type rhs;
};

// Equations of a family in source order. Throws UnknownFamily.
const std::vector<FamilyEquation>& family_equations(const std::string& family);
Kind family_result_kind(const std::string& family);

// Builds a family application with the right result kind.
Type fam(const std::string& family, std::vector<Type> args);

struct ReduceOutcome {
  // Normal form; contains no family application.
  std::optional<Type> reduced;
  // Innermost family application that could not be rewritten.
  std::optional<Type> stuck_at;
  // Partially rewritten term (equal to *reduced when reduction finished).
  Type term;
};

ReduceOutcome reduce(const Type& t, const TraceHook& trace = {});

Solution solve_tf(const Pred& p, const std::vector<Pred>& givens = {},
                  const TraceHook& trace = {});

// Con encodings of witnesses.
Type witness_type(const InjWitness& w);
Type witness_type(const MinusWitness& w);
std::optional<InjWitness> to_inj_witness(const Type& t);
std::optional<MinusWitness> to_minus_witness(const Type& t);

}  // namespace xv
