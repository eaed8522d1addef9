#pragma once

// Call-by-value evaluation. In evidence mode every inj/inj'/?/prj node is
// specialised by solving its recorded predicate at the ground types of the
// current instantiation; top-level lets are memoised per instantiation.
// Label mode (row-typed programs) dispatches on constructor names instead
// and needs no evidence.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>

#include "xv/lang/ast.hpp"
#include "xv/lang/infer.hpp"
#include "xv/lang/value.hpp"

namespace xv::lang {

// Structural map over the Self fields of a constructor value, under
// Inl/Inr tags.
ValuePtr fmap_value(const std::map<std::string, const DataDecl*>& ctors,
                    const std::function<ValuePtr(const ValuePtr&)>& h, const ValuePtr& v);

class Evaluator {
 public:
  explicit Evaluator(const CheckedProgram& cp);
  // Label mode over a row-typed program; `labels` gives the constructor
  // each `?` and prj node selects.
  Evaluator(const Program& prog, std::map<int, std::string> labels);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  // `types` instantiates main's remaining (ambiguous) variables.
  ValuePtr eval_main(const Subst& types = {});
  // Top-level let at the given instantiation of its scheme variables.
  ValuePtr eval_let(const std::string& name, const Subst& types = {});
  ValuePtr apply(const ValuePtr& f, const ValuePtr& arg);

  // Distinct predicates solved for evidence so far.
  std::size_t evidence_solved() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace xv::lang
