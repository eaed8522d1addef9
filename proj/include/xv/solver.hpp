#pragma once

// Solver selection shared by inference, defaulting and the CLI.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/chain_solver.hpp"
#include "xv/types.hpp"

namespace xv {

enum class SolverKind { Chains, Families, Rows };

struct UnsupportedConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  SolverKind kind = SolverKind::Chains;
  SolverFlags flags;
  TraceHook trace;
};

std::optional<SolverKind> parse_solver_kind(const std::string& text);
std::string to_string(SolverKind k);

// Throws UnsupportedConfig for the rows solver and for generalized
// clauses under families.
void check_config(const SolverConfig& cfg);

Solution solve(const Pred& p, const std::vector<Pred>& givens, const SolverConfig& cfg);

}  // namespace xv
