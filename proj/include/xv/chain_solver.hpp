#pragma once

// Instance-chain entailment for In / In-fails / :<: / :-: / Functor.
//
// Clause selection, per clause in chain order:
//   head apart from goal (finite unification)   -> skip
//   head unifies but does not match             -> Stuck
//   head matches, some hypothesis Fails         -> skip
//   head matches, some hypothesis Stuck         -> Stuck
//   head matches, all hypotheses Hold           -> Holds (Asserts) / Fails (Denies)
// Chain exhaustion is Fails.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/types.hpp"

namespace xv {

struct SolverFlags {
  bool generalized = false;
  int depth_limit = 10000;
};

struct DepthExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImprovementConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One record per clause or equation attempt. outcome is one of
// "matched", "apart", "stuck", "hyp-failed".
struct TraceRecord {
  std::string id;
  std::string goal;
  std::string outcome;
};

using TraceHook = std::function<void(const TraceRecord&)>;

std::string format_trace(const TraceRecord& r);

enum class Polarity { Asserts, Denies };

// Builds conclusion evidence from the head bindings and the hypotheses'
// solutions (in hypothesis order).
using EvidenceBuilder = std::function<Holds(const Subst&, const std::vector<Holds>&)>;

struct Clause {
  std::string id;
  Pred head;
  std::vector<Pred> hyps;
  Polarity polarity = Polarity::Asserts;
  EvidenceBuilder build;
  bool generalized_only = false;
};

// Clauses for one predicate family, in chain order (generalized clauses
// included; callers filter on the flag). Pattern variables start with '?'.
const std::vector<Clause>& chain_for(PredKind kind);

Solution solve_chain(const Pred& p, const std::vector<Pred>& givens = {},
                     const SolverFlags& flags = {}, const TraceHook& trace = {});

// Functional-dependency improvement for a solved MinusP: unifies the output
// position with `remainder` under s. Throws ImprovementConflict.
Subst improve(const Pred& p, const Type& remainder, Subst s);

// Structural Functor check: atoms hold, coproducts need both sides,
// variables are stuck, anything else fails.
Solution solve_functor(const Type& f);

}  // namespace xv
