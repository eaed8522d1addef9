#include "xv/lang/value.hpp"

namespace xv::lang {

namespace {

ValuePtr make(Value::Tag tag, std::vector<ValuePtr> kids = {}) {
  auto v = std::make_shared<Value>();
  v->tag = tag;
  v->kids = std::move(kids);
  return v;
}

std::string atomic(const ValuePtr& v) {
  std::string s = to_string(v);
  bool simple = v->tag == Value::Tag::Int || v->tag == Value::Tag::Bool ||
                v->tag == Value::Tag::Pair || v->tag == Value::Tag::Nothing ||
                v->tag == Value::Tag::Fun || (v->tag == Value::Tag::Con && v->kids.empty());
  if (v->tag == Value::Tag::Int && v->ival < 0) simple = false;
  return simple ? s : "(" + s + ")";
}

const char* tag_name(Value::Tag t) {
  switch (t) {
    case Value::Tag::Inl: return "Inl";
    case Value::Tag::Inr: return "Inr";
    case Value::Tag::In: return "In";
    case Value::Tag::Just: return "Just";
    default: return "";
  }
}

}  // namespace

ValuePtr vint(long long n) {
  auto v = std::make_shared<Value>();
  v->tag = Value::Tag::Int;
  v->ival = n;
  return v;
}

ValuePtr vbool(bool b) {
  auto v = std::make_shared<Value>();
  v->tag = Value::Tag::Bool;
  v->bval = b;
  return v;
}

ValuePtr vpair(ValuePtr a, ValuePtr b) { return make(Value::Tag::Pair, {std::move(a), std::move(b)}); }

ValuePtr vfun(std::function<ValuePtr(const ValuePtr&)> fn) {
  auto v = std::make_shared<Value>();
  v->tag = Value::Tag::Fun;
  v->fn = std::move(fn);
  return v;
}

ValuePtr vcon(std::string name, std::vector<ValuePtr> fields) {
  auto v = std::make_shared<Value>();
  v->tag = Value::Tag::Con;
  v->name = std::move(name);
  v->kids = std::move(fields);
  return v;
}

ValuePtr vinl(ValuePtr v) { return make(Value::Tag::Inl, {std::move(v)}); }
ValuePtr vinr(ValuePtr v) { return make(Value::Tag::Inr, {std::move(v)}); }
ValuePtr vin(ValuePtr v) { return make(Value::Tag::In, {std::move(v)}); }
ValuePtr vjust(ValuePtr v) { return make(Value::Tag::Just, {std::move(v)}); }
ValuePtr vnothing() { return make(Value::Tag::Nothing); }

bool equal(const ValuePtr& a, const ValuePtr& b) {
  if (a->tag != b->tag || a->tag == Value::Tag::Fun) return false;
  if (a->ival != b->ival || a->bval != b->bval || a->name != b->name) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

std::string to_string(const ValuePtr& v) {
  switch (v->tag) {
    case Value::Tag::Int: return std::to_string(v->ival);
    case Value::Tag::Bool: return v->bval ? "True" : "False";
    case Value::Tag::Pair: return "(" + to_string(v->kids[0]) + ", " + to_string(v->kids[1]) + ")";
    case Value::Tag::Fun: return "<function>";
    case Value::Tag::Nothing: return "Nothing";
    case Value::Tag::Con: {
      std::string s = v->name;
      for (const ValuePtr& k : v->kids) s += " " + atomic(k);
      return s;
    }
    default: return std::string(tag_name(v->tag)) + " " + atomic(v->kids[0]);
  }
}

ValuePtr inject_value(const InjWitness& w, const ValuePtr& v) {
  switch (w.form()) {
    case InjWitness::Form::Refl: return v;
    case InjWitness::Form::L: return vinl(inject_value(w.inner(), v));
    case InjWitness::Form::R: return vinr(inject_value(w.inner(), v));
    case InjWitness::Form::Split:
      if (v->tag == Value::Tag::Inl) return inject_value(w.left_case(), v->kids[0]);
      if (v->tag == Value::Tag::Inr) return inject_value(w.right_case(), v->kids[0]);
      throw EvalError("injection evidence expects a coproduct value, got " + to_string(v));
  }
  throw EvalError("bad injection evidence");
}

Routed route_branch(const MinusWitness& w, const ValuePtr& v) {
  auto expect_tag = [&](void) {
    if (v->tag != Value::Tag::Inl && v->tag != Value::Tag::Inr)
      throw EvalError("branching evidence " + to_string(w) + " expects a coproduct value, got " +
                      to_string(v));
  };
  switch (w.form()) {
    case MinusWitness::Form::Onl:
      expect_tag();
      return {v->tag == Value::Tag::Inl, v->kids[0]};
    case MinusWitness::Form::Onr:
      expect_tag();
      return {v->tag == Value::Tag::Inr, v->kids[0]};
    case MinusWitness::Form::Le: {
      expect_tag();
      if (v->tag == Value::Tag::Inr) return {false, vinr(v->kids[0])};
      Routed r = route_branch(w.inner(), v->kids[0]);
      return r.selected ? r : Routed{false, vinl(r.value)};
    }
    case MinusWitness::Form::Ri: {
      expect_tag();
      if (v->tag == Value::Tag::Inl) return {false, vinl(v->kids[0])};
      Routed r = route_branch(w.inner(), v->kids[0]);
      return r.selected ? r : Routed{false, vinr(r.value)};
    }
    case MinusWitness::Form::Dist: {
      Routed a = route_branch(w.first(), v);
      if (a.selected) return {true, vinl(a.value)};
      Routed b = route_branch(w.second(), a.value);
      if (b.selected) return {true, vinr(b.value)};
      return b;
    }
  }
  throw EvalError("bad branching evidence");
}

}  // namespace xv::lang
