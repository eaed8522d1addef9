#pragma once

// Gaster-Jones style row typing for the surface language: variants are
// Σ(label: functor, ... | tail) with lacks predicates on row variables.
// Labels are constructor names. A branch `m ? n` takes its label from the
// constructor pattern of m; an n whose domain is a single functor closes
// the row (as if written n ? noMatch).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xv/lang/ast.hpp"

namespace xv::rows {

struct RowError : std::runtime_error {
  RowError(lang::Pos p, const std::string& msg);
  lang::Pos pos;
};

struct RowResult {
  // (name, "name : forall a. (a \ Const) => Fix Σ(Const: Const | a)")
  std::vector<std::pair<std::string, std::string>> lets;
  std::optional<std::string> main_type;
  // Label chosen for each `?` and prj node (by expression id).
  std::map<int, std::string> labels;
};

RowResult infer_rows(const lang::Program& prog);

}  // namespace xv::rows
