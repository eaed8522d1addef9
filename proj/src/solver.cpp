#include "xv/solver.hpp"

#include "xv/family_solver.hpp"

namespace xv {

std::optional<SolverKind> parse_solver_kind(const std::string& text) {
  if (text == "chains") return SolverKind::Chains;
  if (text == "families") return SolverKind::Families;
  if (text == "rows") return SolverKind::Rows;
  return std::nullopt;
}

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Chains: return "chains";
    case SolverKind::Families: return "families";
    case SolverKind::Rows: return "rows";
  }
  return "?";
}

void check_config(const SolverConfig& cfg) {
  if (cfg.kind == SolverKind::Rows)
    throw UnsupportedConfig("the rows solver does not solve coproduct predicates");
  if (cfg.kind == SolverKind::Families && cfg.flags.generalized)
    throw UnsupportedConfig("--generalized has no type family translation");
  if (cfg.flags.depth_limit < 1) throw UnsupportedConfig("depth limit must be positive");
}

Solution solve(const Pred& p, const std::vector<Pred>& givens, const SolverConfig& cfg) {
  check_config(cfg);
  if (cfg.kind == SolverKind::Families) return solve_tf(p, givens, cfg.trace);
  return solve_chain(p, givens, cfg.flags, cfg.trace);
}

}  // namespace xv
