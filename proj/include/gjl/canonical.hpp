#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gjl/calculus.hpp"
#include "gjl/fitting.hpp"
#include "gjl/goedel.hpp"
#include "gjl/mkrtychev.hpp"
#include "gjl/syntax.hpp"

namespace gjl {

struct fragment_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct coverage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite fragment of the canonical possible-world model: finitely many
/// evaluations playing the role of worlds, with the canonical crisp
/// accessibility comparison computed over the recorded atoms only. Claims
/// about the fragment are always relative to that atom set; the coverage
/// guard in truth_lemma_check keeps queries inside it.
struct CanonicalFragment {
  GJModel model;
  std::vector<Assignment> evaluations;
  StarAtomSet relevant;
  std::vector<StarFormulaPtr> theorems;
};

namespace detail {

inline void require_validates(const Assignment& v, const std::vector<StarFormulaPtr>& theorems,
                              std::size_t which) {
  for (const auto& th : theorems) {
    if (!eval_prop(v, th).is_one())
      throw fragment_error("assignment " + std::to_string(which + 1) +
                           " violates theorem: " + print_star(th));
  }
}

} // namespace detail

/// Builds the fragment model: worlds are the assignments, accessibility is
/// the crisp canonical comparison over the relevant atoms, evidence at a
/// boxed atom is the assignment's value there, and the valuation mirrors the
/// plain atoms. Assignments that fail a theorem are rejected.
inline CanonicalFragment build_fragment(std::vector<Assignment> evals,
                                        std::vector<StarFormulaPtr> theorems) {
  if (evals.empty()) throw std::invalid_argument("a fragment needs at least one assignment");
  for (std::size_t i = 0; i < evals.size(); ++i)
    detail::require_validates(evals[i], theorems, i);

  CanonicalFragment frag;
  for (const auto& th : theorems) collect_atoms(th, frag.relevant);
  for (const auto& v : evals)
    for (const auto& [atom, value] : v.entries()) frag.relevant.insert(atom);

  GJModel& m = frag.model;
  for (std::size_t i = 0; i < evals.size(); ++i) m.add_world("v" + std::to_string(i + 1));
  m.set_rel_default(Value::zero());
  m.set_evidence_default(Value::one());
  m.set_valuation_default(evals.front().default_value());

  for (const auto& atom : frag.relevant) {
    if (atom.is_boxed()) {
      m.add_signature(atom.term(), atom.body());
      for (std::size_t i = 0; i < evals.size(); ++i)
        m.set_evidence(atom.term(), atom.body(), i, evals[i].at(atom));
    } else {
      for (std::size_t i = 0; i < evals.size(); ++i)
        m.set_valuation(i, atom.index(), evals[i].at(atom));
    }
  }

  for (std::size_t i = 0; i < evals.size(); ++i) {
    for (std::size_t j = 0; j < evals.size(); ++j) {
      bool related = true;
      for (const auto& atom : frag.relevant) {
        if (!atom.is_boxed()) continue;
        if (evals[i].at(atom) > eval_prop(evals[j], star(atom.body()))) {
          related = false;
          break;
        }
      }
      m.set_rel(i, j, related ? Value::one() : Value::zero());
    }
  }

  frag.evaluations = std::move(evals);
  frag.theorems = std::move(theorems);
  return frag;
}

namespace detail {

inline void require_covered(const CanonicalFragment& frag, const FormulaPtr& f) {
  for (const auto& sub : subformula_closure(std::vector<FormulaPtr>{f})) {
    if (sub->kind() == FormulaKind::Atom) {
      if (!frag.relevant.count(StarAtom::plain(sub->index())))
        throw coverage_error("fragment too small: atom p" + std::to_string(sub->index()) +
                             " is not covered");
    } else if (sub->kind() == FormulaKind::Just) {
      if (!frag.relevant.count(StarAtom::boxed(sub->body(), sub->term())))
        throw coverage_error("fragment too small: " + print_formula(sub) + " is not covered");
    }
  }
}

} // namespace detail

/// Compares the possible-world evaluation at a fragment world with the
/// underlying assignment's value of the star translation. Insufficient atom
/// coverage is an explicit error, never a silent false.
inline bool truth_lemma_check(const CanonicalFragment& frag, std::size_t world,
                              const FormulaPtr& f) {
  if (world >= frag.evaluations.size()) throw std::invalid_argument("world index out of range");
  detail::require_covered(frag, f);
  return eval_world(frag.model, world, f) == eval_prop(frag.evaluations[world], star(f));
}

/// The canonical world-free model with respect to one evaluation: evidence
/// at (t, phi) is the value of the boxed atom, the valuation mirrors the
/// plain atoms.
inline GMModel build_mkrtychev_canonical(const Assignment& v,
                                         const std::vector<StarFormulaPtr>& theorems) {
  detail::require_validates(v, theorems, 0);
  StarAtomSet relevant;
  for (const auto& th : theorems) collect_atoms(th, relevant);
  for (const auto& [atom, value] : v.entries()) relevant.insert(atom);

  GMModel m;
  m.set_evidence_default(Value::one());
  m.set_valuation_default(v.default_value());
  for (const auto& atom : relevant) {
    if (atom.is_boxed()) {
      m.add_signature(atom.term(), atom.body());
      m.set_evidence(atom.term(), atom.body(), v.at(atom));
    } else {
      m.set_valuation(atom.index(), v.at(atom));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Theorem fragments
// ---------------------------------------------------------------------------

struct TheoremFragment {
  std::vector<StarFormulaPtr> theorems;
  /// Every pair mentioned by the theorems: the base closed under
  /// justification subformulas plus the introduced conclusion pairs.
  SignatureSet pairs;
};

/// Star translations of the axiom instances a fragment needs so that
/// assignments validating them build into a model of the given class:
/// application/sum instances wherever the conclusion pair is kept, negative
/// then positive introspection instances over the accumulated pairs, and
/// factivity instances over every pair for the reflexive classes. The base
/// is closed under justification subformulas first.
inline TheoremFragment star_theorem_fragment(const SignatureSet& base,
                                             Calculus calc) {
  const auto& schemas = axiom_schemas(calc);
  auto has = [&](Schema s) {
    for (Schema x : schemas)
      if (x == s) return true;
    return false;
  };

  // Close the base under justification subformulas of the bodies.
  SignatureSet relevant;
  std::vector<TermFormula> queue(base.begin(), base.end());
  while (!queue.empty()) {
    TermFormula pair = queue.back();
    queue.pop_back();
    if (!relevant.insert(pair).second) continue;
    for (const auto& sub : subformula_closure(std::vector<FormulaPtr>{pair.formula}))
      if (sub->kind() == FormulaKind::Just) queue.push_back({sub->term(), sub->body()});
  }

  auto boxed = [](const TermFormula& p) { return StarFormula::atom(StarAtom::boxed(p.formula, p.term)); };

  std::vector<StarFormulaPtr> theorems;
  std::set<StarFormulaPtr, StarFormulaLess> seen;
  auto add = [&](const StarFormulaPtr& th) {
    if (seen.insert(th).second) theorems.push_back(th);
  };

  // Application and sum conclusions over the base become relevant.
  const std::vector<TermFormula> snapshot0(relevant.begin(), relevant.end());
  for (const auto& a : snapshot0) {
    for (const auto& b : snapshot0) {
      if (a.formula->kind() == FormulaKind::Implies && equal(a.formula->left(), b.formula)) {
        const TermFormula concl{Term::app(a.term, b.term), a.formula->right()};
        add(StarFormula::impl(boxed(a), StarFormula::impl(boxed(b), boxed(concl))));
        relevant.insert(concl);
      }
      if (equal(a.formula, b.formula)) {
        const TermFormula concl{Term::sum(a.term, b.term), a.formula};
        add(StarFormula::impl(boxed(a), boxed(concl)));
        add(StarFormula::impl(boxed(b), boxed(concl)));
        relevant.insert(concl);
      }
    }
  }

  if (has(Schema::NI)) {
    const std::vector<TermFormula> snapshot(relevant.begin(), relevant.end());
    for (const auto& p : snapshot) {
      const FormulaPtr negated = Formula::neg(Formula::just(p.term, p.formula));
      const TermFormula concl{Term::query(p.term), negated};
      add(StarFormula::impl(StarFormula::neg(boxed(p)), boxed(concl)));
      relevant.insert(concl);
    }
  }

  if (has(Schema::PI)) {
    const std::vector<TermFormula> snapshot(relevant.begin(), relevant.end());
    for (const auto& p : snapshot) {
      const TermFormula concl{Term::bang(p.term), Formula::just(p.term, p.formula)};
      add(StarFormula::impl(boxed(p), boxed(concl)));
      relevant.insert(concl);
    }
  }

  // One more pass so that any application/sum conclusion that happens to be
  // relevant already is pinned by its instance.
  const std::vector<TermFormula> all(relevant.begin(), relevant.end());
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a.formula->kind() == FormulaKind::Implies && equal(a.formula->left(), b.formula)) {
        const TermFormula concl{Term::app(a.term, b.term), a.formula->right()};
        if (relevant.count(concl))
          add(StarFormula::impl(boxed(a), StarFormula::impl(boxed(b), boxed(concl))));
      }
      if (equal(a.formula, b.formula)) {
        const TermFormula concl{Term::sum(a.term, b.term), a.formula};
        if (relevant.count(concl)) {
          add(StarFormula::impl(boxed(a), boxed(concl)));
          add(StarFormula::impl(boxed(b), boxed(concl)));
        }
      }
    }
  }

  if (has(Schema::F)) {
    for (const auto& p : relevant)
      add(StarFormula::impl(boxed(p), star(p.formula)));
  }

  return TheoremFragment{std::move(theorems), std::move(relevant)};
}

} // namespace gjl
