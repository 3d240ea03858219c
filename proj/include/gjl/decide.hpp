#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gjl/fitting.hpp"
#include "gjl/goedel.hpp"
#include "gjl/mkrtychev.hpp"
#include "gjl/syntax.hpp"
#include "gjl/value.hpp"

namespace gjl {

struct atom_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConsequenceQuery {
  std::vector<StarFormulaPtr> premises;
  StarFormulaPtr goal;
  EntailMode mode = EntailMode::One;
};

inline StarAtomSet query_atoms(const ConsequenceQuery& q) {
  StarAtomSet atoms;
  for (const auto& p : q.premises) collect_atoms(p, atoms);
  collect_atoms(q.goal, atoms);
  return atoms;
}

struct DecideResult {
  bool valid = true;
  std::optional<Assignment> countermodel;
};

inline constexpr unsigned kDefaultAtomCap = 8;

namespace detail {

/// Exhaustive search over assignments mapping the query's atoms into the
/// given value chain. Atoms vary in their canonical order, the last one
/// fastest and values ascending, so the first countermodel found is the
/// reproducible one.
inline DecideResult search_chain(const ConsequenceQuery& q, const std::vector<Value>& chain,
                                 unsigned atom_cap) {
  const StarAtomSet atom_set = query_atoms(q);
  const std::vector<StarAtom> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > atom_cap)
    throw atom_cap_error("query has " + std::to_string(atoms.size()) +
                         " atoms, above the cap of " + std::to_string(atom_cap));

  std::vector<std::size_t> idx(atoms.size(), 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a.set(atoms[i], chain[idx[i]]);

    Value prem = Value::one();
    for (const auto& p : q.premises) prem = std::min(prem, eval_prop(a, p));
    const Value goal = eval_prop(a, q.goal);
    const bool fails = q.mode == EntailMode::Leq ? prem > goal
                                                 : prem.is_one() && !goal.is_one();
    if (fails) return DecideResult{false, std::move(a)};

    std::size_t pos = atoms.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < chain.size()) break;
      idx[pos] = 0;
      if (pos == 0) return DecideResult{};
    }
    if (atoms.empty()) return DecideResult{};
  }
}

} // namespace detail

/// Decides propositional consequence over the unit interval by enumerating
/// assignments into the chain {0, 1/(n+1), ..., n/(n+1), 1} for n distinct
/// atoms. The truth functions only compare values and select among them and
/// the constants 0 and 1, so any countermodel collapses onto the relative
/// order of its atom values; n atoms need at most n+2 distinct levels. The
/// grid oracle cross-validates this reduction in the test suite.
inline DecideResult decide_consequence(const ConsequenceQuery& q,
                                       unsigned atom_cap = kDefaultAtomCap) {
  const std::size_t n = query_atoms(q).size();
  std::vector<Value> chain;
  chain.reserve(n + 2);
  for (std::size_t i = 0; i <= n + 1; ++i)
    chain.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n + 1));
  return detail::search_chain(q, chain, atom_cap);
}

/// Independent brute-force check over the uniform grid {0, 1/levels, ..., 1}.
inline DecideResult grid_oracle(const ConsequenceQuery& q, unsigned levels,
                                unsigned atom_cap = kDefaultAtomCap) {
  if (levels == 0) throw std::invalid_argument("grid needs at least one level");
  std::vector<Value> chain;
  chain.reserve(levels + 1);
  for (unsigned i = 0; i <= levels; ++i)
    chain.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(levels));
  return detail::search_chain(q, chain, atom_cap);
}

struct ModeComparison {
  std::size_t checked = 0;
  std::vector<std::size_t> disagreements; // indices of queries where the modes differ
};

/// Decides each query in both entailment modes and reports disagreements
/// (expected: none; the two notions coincide).
inline ModeComparison check_leq_equals_one(const std::vector<ConsequenceQuery>& queries,
                                           unsigned atom_cap = kDefaultAtomCap) {
  ModeComparison res;
  for (const auto& q : queries) {
    ConsequenceQuery leq = q;
    leq.mode = EntailMode::Leq;
    ConsequenceQuery one = q;
    one.mode = EntailMode::One;
    if (decide_consequence(leq, atom_cap).valid != decide_consequence(one, atom_cap).valid)
      res.disagreements.push_back(res.checked);
    ++res.checked;
  }
  return res;
}

namespace detail {

inline void require_plain(const Assignment& e) {
  for (const auto& [atom, value] : e.entries())
    if (atom.is_boxed())
      throw std::invalid_argument("countermodel construction needs a purely propositional "
                                  "assignment, got " + print_atom(atom));
}

} // namespace detail

/// The single-world refutation model: one reflexive world, evidence
/// constantly 1, valuation copied from the assignment. Propositional
/// formulas keep their assignment value exactly, the model classifies into
/// every class over its signature and respects any constant specification.
/// Optional signature pairs are pinned to evidence 1.
inline GJModel conservativity_countermodel(const Assignment& e,
                                           const SignatureSet& signature = {}) {
  detail::require_plain(e);
  GJModel m;
  const std::size_t w = m.add_world("w");
  m.set_rel(w, w, Value::one());
  m.set_rel_default(Value::zero());
  m.set_evidence_default(Value::one());
  m.set_valuation_default(e.default_value());
  for (const auto& [atom, value] : e.entries()) m.set_valuation(w, atom.index(), value);
  for (const auto& pair : signature) {
    m.add_signature(pair.term, pair.formula);
    m.set_evidence(pair.term, pair.formula, w, Value::one());
  }
  return m;
}

/// World-free variant used for the negative-introspection system.
inline GMModel conservativity_countermodel_m(const Assignment& e,
                                             const SignatureSet& signature = {}) {
  detail::require_plain(e);
  GMModel m;
  m.set_evidence_default(Value::one());
  m.set_valuation_default(e.default_value());
  for (const auto& [atom, value] : e.entries()) m.set_valuation(atom.index(), value);
  for (const auto& pair : signature) {
    m.add_signature(pair.term, pair.formula);
    m.set_evidence(pair.term, pair.formula, Value::one());
  }
  return m;
}

} // namespace gjl
