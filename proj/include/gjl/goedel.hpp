#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "gjl/syntax.hpp"
#include "gjl/value.hpp"

namespace gjl {

// Truth functions of the minimum t-norm and its residuum. Everything below
// only selects among its inputs and the constants 0, 1, so exactness of
// Value carries through every evaluation.

inline Value tnorm(const Value& x, const Value& y) { return std::min(x, y); }

inline Value residuum(const Value& x, const Value& y) {
  return x > y ? y : Value::one();
}

inline Value neg_value(const Value& x) {
  return x.is_zero() ? Value::one() : Value::zero();
}

inline Value oplus(const Value& x, const Value& y) { return std::max(x, y); }

inline Value iff_value(const Value& x, const Value& y) {
  return x == y ? Value::one() : std::min(x, y);
}

/// Finite map from star atoms to values, total via a default.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(Value dflt) : default_(dflt) {}

  const Value& default_value() const { return default_; }
  void set_default(Value v) { default_ = v; }

  void set(const StarAtom& a, Value v) { map_[a] = v; }

  const Value& at(const StarAtom& a) const {
    auto it = map_.find(a);
    return it == map_.end() ? default_ : it->second;
  }

  bool has(const StarAtom& a) const { return map_.count(a) != 0; }

  const std::map<StarAtom, Value, StarAtomLess>& entries() const { return map_; }

private:
  std::map<StarAtom, Value, StarAtomLess> map_;
  Value default_ = Value::zero();
};

/// Recursive propositional evaluation: bottom to 0, atoms via lookup,
/// conjunction via the t-norm, implication via the residuum.
inline Value eval_prop(const Assignment& a, const StarFormulaPtr& f) {
  switch (f->kind()) {
    case StarKind::Bottom:
      return Value::zero();
    case StarKind::Atom:
      return a.at(f->atom_ref());
    case StarKind::And:
      return tnorm(eval_prop(a, f->left()), eval_prop(a, f->right()));
    case StarKind::Implies:
      return residuum(eval_prop(a, f->left()), eval_prop(a, f->right()));
  }
  throw std::logic_error("unreachable");
}

/// Minimum over the members; 1 for the empty set.
template <typename Range>
inline Value eval_prop_set(const Assignment& a, const Range& formulas) {
  Value v = Value::one();
  for (const auto& f : formulas) v = std::min(v, eval_prop(a, f));
  return v;
}

} // namespace gjl
