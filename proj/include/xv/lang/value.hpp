#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "xv/types.hpp"

namespace xv::lang {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  enum class Tag { Int, Bool, Pair, Fun, Con, Inl, Inr, In, Just, Nothing };
  Tag tag = Tag::Int;
  long long ival = 0;
  bool bval = false;
  std::string name;              // Con
  std::vector<ValuePtr> kids;    // Pair, Con fields, Inl/Inr/In/Just payload
  std::function<ValuePtr(const ValuePtr&)> fn;
};

ValuePtr vint(long long n);
ValuePtr vbool(bool b);
ValuePtr vpair(ValuePtr a, ValuePtr b);
ValuePtr vfun(std::function<ValuePtr(const ValuePtr&)> fn);
ValuePtr vcon(std::string name, std::vector<ValuePtr> fields = {});
ValuePtr vinl(ValuePtr v);
ValuePtr vinr(ValuePtr v);
ValuePtr vin(ValuePtr v);
ValuePtr vjust(ValuePtr v);
ValuePtr vnothing();

// Structural equality; functions are never equal.
bool equal(const ValuePtr& a, const ValuePtr& b);

// Literal syntax: 3, True, (3, False), Const 1, In (Inl (Const 1)), Just 2.
std::string to_string(const ValuePtr& v);

// Raised by pattern matches on the wrong constructor or tag.
struct PatternFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal invariant violations (ill-shaped evidence, missing evidence).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ValuePtr inject_value(const InjWitness& w, const ValuePtr& v);

struct Routed {
  bool selected = false;
  ValuePtr value;
};

// Selected values are in the subtrahend's shape (Dist rebuilds its
// coproduct tags); the rest are in the remainder's shape.
Routed route_branch(const MinusWitness& w, const ValuePtr& v);

}  // namespace xv::lang
