// Seeded random generators shared by the unit and acceptance suites: values,
// terms, formulas, assignments, well-formed class models and checkable
// derivations. Model generators construct a candidate, repair it towards the
// class conditions by raising evidence values to a fixpoint, and verify the
// result with classify(); the few constructions that can destabilize each
// other retry with fresh randomness.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gjl/gjl.hpp"

namespace gen {

using namespace gjl;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
  }
  bool chance(unsigned percent) { return below(100) < percent; }
};

inline Value value(Rng& r) {
  const std::int64_t den = 1 + static_cast<std::int64_t>(r.below(6));
  const std::int64_t num = static_cast<std::int64_t>(r.below(static_cast<std::size_t>(den) + 1));
  return Value(num, den);
}

inline TermPtr term(Rng& r, unsigned depth = 2) {
  if (depth == 0 || r.chance(45)) {
    if (r.chance(25)) return Term::constant(1 + static_cast<unsigned>(r.below(2)));
    return Term::var(1 + static_cast<unsigned>(r.below(3)));
  }
  switch (r.below(4)) {
    case 0: return Term::app(term(r, depth - 1), term(r, depth - 1));
    case 1: return Term::sum(term(r, depth - 1), term(r, depth - 1));
    case 2: return Term::bang(term(r, depth - 1));
    default: return Term::query(term(r, depth - 1));
  }
}

/// Random formula; justification subformulas appear only when allowed.
inline FormulaPtr formula(Rng& r, unsigned depth = 3, unsigned atoms = 3,
                          bool allow_just = true) {
  if (depth == 0 || r.chance(30)) {
    if (r.chance(10)) return Formula::bottom();
    return Formula::atom(1 + static_cast<unsigned>(r.below(atoms)));
  }
  const std::size_t pick = r.below(allow_just ? 5 : 3);
  switch (pick) {
    case 0: return Formula::conj(formula(r, depth - 1, atoms, allow_just),
                                 formula(r, depth - 1, atoms, allow_just));
    case 1:
    case 2: return Formula::impl(formula(r, depth - 1, atoms, allow_just),
                                 formula(r, depth - 1, atoms, allow_just));
    default: return Formula::just(term(r, 1), formula(r, depth - 1, atoms, allow_just));
  }
}

inline StarFormulaPtr star_formula(Rng& r, unsigned depth = 3, unsigned atoms = 3,
                                   bool allow_boxed = true) {
  return star(formula(r, depth, atoms, allow_boxed));
}

inline Assignment assignment(Rng& r, const StarAtomSet& atoms) {
  Assignment a(value(r));
  for (const auto& atom : atoms) a.set(atom, value(r));
  return a;
}

inline std::size_t formula_size(const FormulaPtr& f) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom: return 1;
    case FormulaKind::And:
    case FormulaKind::Implies: return 1 + formula_size(f->left()) + formula_size(f->right());
    case FormulaKind::Just: return 1 + formula_size(f->body());
  }
  return 1;
}

/// Builds the stated instance of a schema from the given metavariable values.
inline FormulaPtr schema_instance(Schema s, const FormulaPtr& phi, const FormulaPtr& psi,
                                  const FormulaPtr& chi, const TermPtr& t, const TermPtr& u) {
  using F = Formula;
  switch (s) {
    case Schema::A1:
      return F::impl(F::impl(phi, psi), F::impl(F::impl(psi, chi), F::impl(phi, chi)));
    case Schema::A2: return F::impl(F::conj(phi, psi), phi);
    case Schema::A3: return F::impl(F::conj(phi, psi), F::conj(psi, phi));
    case Schema::A5a:
      return F::impl(F::impl(phi, F::impl(psi, chi)), F::impl(F::conj(phi, psi), chi));
    case Schema::A5b:
      return F::impl(F::impl(F::conj(phi, psi), chi), F::impl(phi, F::impl(psi, chi)));
    case Schema::A6:
      return F::impl(F::impl(F::impl(phi, psi), chi),
                     F::impl(F::impl(F::impl(psi, phi), chi), chi));
    case Schema::A7: return F::impl(F::bottom(), phi);
    case Schema::G4: return F::impl(phi, F::conj(phi, phi));
    case Schema::J:
      return F::impl(F::just(t, F::impl(phi, psi)),
                     F::impl(F::just(u, phi), F::just(Term::app(t, u), psi)));
    case Schema::PlusL: return F::impl(F::just(t, phi), F::just(Term::sum(t, u), phi));
    case Schema::PlusR: return F::impl(F::just(u, phi), F::just(Term::sum(t, u), phi));
    case Schema::F: return F::impl(F::just(t, phi), phi);
    case Schema::PI:
      return F::impl(F::just(t, phi), F::just(Term::bang(t), F::just(t, phi)));
    case Schema::NI:
      return F::impl(F::neg(F::just(t, phi)),
                     F::just(Term::query(t), F::neg(F::just(t, phi))));
  }
  throw std::logic_error("unreachable");
}

inline FormulaPtr schema_instance(Rng& r, Schema s, unsigned depth = 2, bool allow_just = true) {
  return schema_instance(s, formula(r, depth, 3, allow_just), formula(r, depth, 3, allow_just),
                         formula(r, depth, 3, allow_just), term(r, 1), term(r, 1));
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

inline SignatureSet just_pairs(const std::vector<FormulaPtr>& fs) {
  SignatureSet sig;
  for (const auto& sub : subformula_closure(fs))
    if (sub->kind() == FormulaKind::Just) sig.insert({sub->term(), sub->body()});
  return sig;
}

/// Closes a signature under justification subformulas of the bodies and
/// under sum components: a pair ([a+b], phi) pulls in (a, phi) and (b, phi),
/// so the sum closure condition can be enforced rather than left to the
/// evidence default.
inline SignatureSet close_signature(const SignatureSet& sig) {
  SignatureSet out;
  std::vector<TermFormula> queue(sig.begin(), sig.end());
  while (!queue.empty()) {
    TermFormula pair = queue.back();
    queue.pop_back();
    if (!out.insert(pair).second) continue;
    for (const auto& sub : subformula_closure(std::vector<FormulaPtr>{pair.formula}))
      if (sub->kind() == FormulaKind::Just) queue.push_back({sub->term(), sub->body()});
    if (pair.term->kind() == TermKind::Sum) {
      queue.push_back({pair.term->left(), pair.formula});
      queue.push_back({pair.term->right(), pair.formula});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Well-formed possible-world class models
// ---------------------------------------------------------------------------

namespace detail {

inline void random_valuation(Rng& r, GJModel& m, unsigned atoms) {
  for (std::size_t w = 0; w < m.worlds().size(); ++w)
    for (unsigned p = 1; p <= atoms; ++p) m.set_valuation(w, p, value(r));
}

inline void random_evidence(Rng& r, GJModel& m) {
  for (const auto& pair : m.signature())
    for (std::size_t w = 0; w < m.worlds().size(); ++w)
      m.set_evidence(pair.term, pair.formula, w, value(r));
}

inline void pin_cs(GJModel& m, const ConstantSpec& cs) {
  for (const auto& pair : m.signature()) {
    if (pair.term->kind() != TermKind::Const) continue;
    if (cs.contains(Formula::just(pair.term, pair.formula)))
      for (std::size_t w = 0; w < m.worlds().size(); ++w)
        m.set_evidence(pair.term, pair.formula, w, Value::one());
  }
}

inline void make_reflexive(GJModel& m) {
  for (std::size_t w = 0; w < m.worlds().size(); ++w) m.set_rel(w, w, Value::one());
}

inline void transitive_close(GJModel& m) {
  const std::size_t n = m.worlds().size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u) {
          const Value lhs = tnorm(m.rel(w, v), m.rel(v, u));
          if (lhs > m.rel(w, u)) {
            m.set_rel(w, u, lhs);
            changed = true;
          }
        }
  }
}

struct RepairFlags {
  bool four = false; // monotonicity + positive introspection raises
  bool ni = false;   // negative introspection raises
};

/// Raises evidence entries until the closure conditions (and the requested
/// class conditions) hold over the signature. Conclusions outside the
/// signature pass through the evidence default of 1.
inline void raise_fixpoint(GJModel& m, const RepairFlags& flags) {
  const std::size_t n = m.worlds().size();
  std::vector<TermFormula> sig(m.signature().begin(), m.signature().end());
  bool changed = true;
  while (changed) {
    changed = false;
    auto raise = [&](const TermPtr& t, const FormulaPtr& f, std::size_t w, const Value& floor) {
      if (!m.in_signature(t, f)) return; // default 1 already satisfies the bound
      if (m.evidence(t, f, w) < floor) {
        m.set_evidence(t, f, w, floor);
        changed = true;
      }
    };
    for (const auto& a : sig) {
      for (const auto& b : sig) {
        if (a.formula->kind() == FormulaKind::Implies && equal(a.formula->left(), b.formula)) {
          const TermPtr concl = Term::app(a.term, b.term);
          for (std::size_t w = 0; w < n; ++w)
            raise(concl, a.formula->right(), w,
                  tnorm(m.evidence(a.term, a.formula, w), m.evidence(b.term, b.formula, w)));
        }
        if (equal(a.formula, b.formula)) {
          const TermPtr concl = Term::sum(a.term, b.term);
          for (std::size_t w = 0; w < n; ++w)
            raise(concl, a.formula, w,
                  oplus(m.evidence(a.term, a.formula, w), m.evidence(b.term, b.formula, w)));
        }
      }
      if (flags.four) {
        const FormulaPtr assertion = Formula::just(a.term, a.formula);
        for (std::size_t w = 0; w < n; ++w) {
          for (std::size_t v = 0; v < n; ++v)
            raise(a.term, a.formula, v, tnorm(m.evidence(a.term, a.formula, w), m.rel(w, v)));
          raise(Term::bang(a.term), assertion, w, m.evidence(a.term, a.formula, w));
        }
      }
      if (flags.ni) {
        const FormulaPtr negated = Formula::neg(Formula::just(a.term, a.formula));
        for (std::size_t w = 0; w < n; ++w)
          raise(Term::query(a.term), negated, w, neg_value(m.evidence(a.term, a.formula, w)));
      }
    }
  }
}

/// Single reflexive world with the strong-evidence bound enforced while
/// assigning pairs in subformula order: each evidence value is drawn at or
/// below the current value of its body.
inline GJModel single_world_strong(Rng& r, const SignatureSet& sig, const ConstantSpec* pins,
                                   unsigned atoms) {
  GJModel m;
  const std::size_t w = m.add_world("w1");
  m.set_rel(w, w, Value::one());
  m.set_rel_default(Value::zero());
  m.set_evidence_default(Value::one());
  for (const auto& pair : sig) m.add_signature(pair.term, pair.formula);
  random_valuation(r, m, atoms);

  std::vector<TermFormula> ordered(sig.begin(), sig.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const TermFormula& a, const TermFormula& b) {
    return formula_size(a.formula) < formula_size(b.formula);
  });
  for (const auto& pair : ordered) {
    const Value cap = eval_world(m, w, pair.formula);
    Value v = std::min(value(r), cap);
    if (r.chance(30)) v = cap;
    if (pins && pair.term->kind() == TermKind::Const &&
        pins->contains(Formula::just(pair.term, pair.formula)))
      v = Value::one();
    m.set_evidence(pair.term, pair.formula, w, v);
  }
  return m;
}

} // namespace detail

/// A random well-formed model of the class, over (the justification-closure
/// of) the given signature, respecting the optional constant specification
/// on its in-signature members. Verified with classify(); throws after too
/// many failed attempts.
inline GJModel class_model(Rng& r, ModelClass cls, const SignatureSet& base_sig,
                           const ConstantSpec* cs = nullptr, std::size_t max_worlds = 3,
                           unsigned atoms = 4) {
  const SignatureSet sig = close_signature(base_sig);
  for (int attempt = 0; attempt < 50; ++attempt) {
    GJModel m;
    detail::RepairFlags flags;
    const std::size_t world_count = cls == ModelClass::GJT45 ? 1 : 1 + r.below(max_worlds);
    if (cls == ModelClass::GJT45) {
      m = detail::single_world_strong(r, sig, cs, atoms);
      flags.four = true;
      flags.ni = true;
    } else {
      for (std::size_t i = 0; i < world_count; ++i) m.add_world("w" + std::to_string(i + 1));
      m.set_rel_default(Value::zero());
      m.set_evidence_default(Value::one());
      for (const auto& pair : sig) m.add_signature(pair.term, pair.formula);
      detail::random_valuation(r, m, atoms);
      detail::random_evidence(r, m);
      const bool crisp = r.chance(50);
      if (cls != ModelClass::GJ45) {
        for (std::size_t w = 0; w < world_count; ++w)
          for (std::size_t v = 0; v < world_count; ++v)
            if (r.chance(60))
              m.set_rel(w, v, crisp ? (r.chance(50) ? Value::one() : Value::zero()) : value(r));
      }
      switch (cls) {
        case ModelClass::GJ: break;
        case ModelClass::GJT: detail::make_reflexive(m); break;
        case ModelClass::GJ4:
          detail::transitive_close(m);
          flags.four = true;
          break;
        case ModelClass::GLP:
          detail::make_reflexive(m);
          detail::transitive_close(m);
          flags.four = true;
          break;
        case ModelClass::GJ45:
          // accessibility constantly 0: transitivity and monotonicity are
          // vacuous and the box value is 1, so strong evidence holds outright
          flags.four = true;
          flags.ni = true;
          break;
        default: break;
      }
      if (cs) detail::pin_cs(m, *cs);
    }
    detail::raise_fixpoint(m, flags);
    if (cs) detail::pin_cs(m, *cs);
    detail::raise_fixpoint(m, flags);

    const Classification c = classify(m);
    if (!c.in(cls)) continue;
    if (cs && !respects_cs(m, *cs).respected) continue;
    return m;
  }
  throw std::runtime_error("could not generate a model of class " +
                           std::string(model_class_name(cls)));
}

// ---------------------------------------------------------------------------
// Well-formed world-free class models
// ---------------------------------------------------------------------------

namespace detail {

struct GmRepairFlags {
  bool pi = false;
  bool ni = false;
};

inline void gm_raise_fixpoint(GMModel& m, const GmRepairFlags& flags) {
  std::vector<TermFormula> sig(m.signature().begin(), m.signature().end());
  bool changed = true;
  while (changed) {
    changed = false;
    auto raise = [&](const TermPtr& t, const FormulaPtr& f, const Value& floor) {
      if (!m.in_signature(t, f)) return;
      if (m.evidence(t, f) < floor) {
        m.set_evidence(t, f, floor);
        changed = true;
      }
    };
    for (const auto& a : sig) {
      for (const auto& b : sig) {
        if (a.formula->kind() == FormulaKind::Implies && equal(a.formula->left(), b.formula))
          raise(Term::app(a.term, b.term), a.formula->right(),
                tnorm(m.evidence(a.term, a.formula), m.evidence(b.term, b.formula)));
        if (equal(a.formula, b.formula))
          raise(Term::sum(a.term, b.term), a.formula,
                oplus(m.evidence(a.term, a.formula), m.evidence(b.term, b.formula)));
      }
      const FormulaPtr assertion = Formula::just(a.term, a.formula);
      if (flags.pi) raise(Term::bang(a.term), assertion, m.evidence(a.term, a.formula));
      if (flags.ni)
        raise(Term::query(a.term), Formula::neg(assertion),
              neg_value(m.evidence(a.term, a.formula)));
    }
  }
}

} // namespace detail

inline GMModel gm_class_model(Rng& r, MkClass cls, const SignatureSet& base_sig,
                              const ConstantSpec* cs = nullptr, unsigned atoms = 4) {
  const SignatureSet sig = close_signature(base_sig);
  const bool capped = cls == MkClass::GMT || cls == MkClass::GMLP || cls == MkClass::GMT45;
  detail::GmRepairFlags flags;
  flags.pi = cls == MkClass::GM4 || cls == MkClass::GMLP || cls == MkClass::GM45;
  flags.ni = cls == MkClass::GM45 || cls == MkClass::GMT45;

  for (int attempt = 0; attempt < 50; ++attempt) {
    GMModel m;
    m.set_evidence_default(Value::one());
    for (const auto& pair : sig) m.add_signature(pair.term, pair.formula);
    for (unsigned p = 1; p <= atoms; ++p) m.set_valuation(p, value(r));

    if (capped) {
      std::vector<TermFormula> ordered(sig.begin(), sig.end());
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const TermFormula& a, const TermFormula& b) {
                         return formula_size(a.formula) < formula_size(b.formula);
                       });
      for (const auto& pair : ordered) {
        const Value cap = eval_m(m, pair.formula);
        Value v = std::min(value(r), cap);
        if (r.chance(30)) v = cap;
        if (cs && pair.term->kind() == TermKind::Const &&
            cs->contains(Formula::just(pair.term, pair.formula)))
          v = Value::one();
        m.set_evidence(pair.term, pair.formula, v);
      }
    } else {
      for (const auto& pair : sig) m.set_evidence(pair.term, pair.formula, value(r));
      if (cs) {
        for (const auto& pair : sig)
          if (pair.term->kind() == TermKind::Const &&
              cs->contains(Formula::just(pair.term, pair.formula)))
            m.set_evidence(pair.term, pair.formula, Value::one());
      }
    }
    detail::gm_raise_fixpoint(m, flags);

    const auto classes = classify_m(m);
    if (classes.count(cls) == 0) continue;
    if (cs && !respects_cs_m(m, *cs).respected) continue;
    return m;
  }
  throw std::runtime_error("could not generate a model of class " +
                           std::string(mk_class_name(cls)));
}

// ---------------------------------------------------------------------------
// Random checkable derivations
// ---------------------------------------------------------------------------

/// Grows a derivation by seeding premises and axiom instances, then firing
/// modus ponens through axiom instances whose antecedent is already in the
/// pool. The result always passes check_derivation.
inline Derivation random_derivation(Rng& r, Calculus calc, const ConstantSpec& cs,
                                    std::size_t target_steps, std::size_t max_premises = 3) {
  Derivation d;
  d.calc = calc;
  d.cs = cs;

  const std::size_t premise_count = 1 + r.below(max_premises);
  for (std::size_t i = 0; i < premise_count; ++i) {
    FormulaPtr p = formula(r, 2, 3, calc != Calculus::G);
    if (r.chance(40)) p = Formula::just(term(r, 1), p); // justified premises feed J and +
    d.premises.push_back(p);
  }

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < premise_count; ++i) {
    d.steps.push_back({d.premises[i], StepRule::Premise, i, 0});
    pool.push_back(d.steps.size() - 1);
  }

  const auto& schemas = axiom_schemas(calc);
  auto has = [&](Schema s) {
    return std::find(schemas.begin(), schemas.end(), s) != schemas.end();
  };

  while (d.steps.size() < target_steps) {
    const std::size_t action = r.below(10);
    if (action < 2) {
      d.steps.push_back({schema_instance(r, schemas[r.below(schemas.size())], 1,
                                         calc != Calculus::G),
                         StepRule::Axiom, 0, 0});
      pool.push_back(d.steps.size() - 1);
    } else if (action < 3 && cs.is_intensional()) {
      FormulaPtr inner = schema_instance(r, schemas[r.below(schemas.size())], 1,
                                         calc != Calculus::G);
      FormulaPtr member = Formula::just(Term::constant(1 + r.below(2)), inner);
      if (r.chance(30)) member = Formula::just(Term::constant(1 + r.below(2)), member);
      d.steps.push_back({member, StepRule::Cs, 0, 0});
      pool.push_back(d.steps.size() - 1);
    } else {
      // Fire modus ponens: pick a pool formula and an axiom with it as
      // antecedent.
      const std::size_t minor = pool[r.below(pool.size())];
      const FormulaPtr& psi = d.steps[minor].formula;
      FormulaPtr ax;
      switch (r.below(6)) {
        case 0: ax = schema_instance(Schema::G4, psi, psi, psi, nullptr, nullptr); break;
        case 1:
          if (psi->kind() == FormulaKind::And)
            ax = schema_instance(r.chance(50) ? Schema::A2 : Schema::A3, psi->left(),
                                 psi->right(), psi, nullptr, nullptr);
          break;
        case 2:
          if (psi->kind() == FormulaKind::Implies)
            ax = schema_instance(Schema::A1, psi->left(), psi->right(),
                                 formula(r, 1, 3, calc != Calculus::G), nullptr, nullptr);
          break;
        case 3:
          if (psi->kind() == FormulaKind::Just && has(Schema::PlusL))
            ax = schema_instance(Schema::PlusL, psi->body(), nullptr, nullptr, psi->term(),
                                 term(r, 1));
          break;
        case 4:
          if (psi->kind() == FormulaKind::Just && psi->body()->kind() == FormulaKind::Implies &&
              has(Schema::J))
            ax = schema_instance(Schema::J, psi->body()->left(), psi->body()->right(), nullptr,
                                 psi->term(), term(r, 1));
          break;
        case 5:
          if (psi->kind() == FormulaKind::Just) {
            if (has(Schema::F) && r.chance(50))
              ax = schema_instance(Schema::F, psi->body(), nullptr, nullptr, psi->term(), nullptr);
            else if (has(Schema::PI))
              ax = schema_instance(Schema::PI, psi->body(), nullptr, nullptr, psi->term(), nullptr);
          }
          break;
      }
      if (!ax) ax = schema_instance(Schema::G4, psi, psi, psi, nullptr, nullptr);
      d.steps.push_back({ax, StepRule::Axiom, 0, 0});
      const std::size_t major = d.steps.size() - 1;
      d.steps.push_back({ax->right(), StepRule::Mp, minor, major});
      pool.push_back(d.steps.size() - 1);
    }
  }
  return d;
}

/// Pairs and plain atoms needed to evaluate every step of a derivation.
inline SignatureSet derivation_signature(const Derivation& d) {
  std::vector<FormulaPtr> all = d.premises;
  for (const auto& st : d.steps) all.push_back(st.formula);
  return just_pairs(all);
}

/// The assignment a model world induces on a set of star atoms: boxed atoms
/// take the modal value of the assertion, plain atoms the valuation.
inline Assignment induced_assignment(const GJModel& m, std::size_t w, const StarAtomSet& atoms) {
  Assignment a;
  for (const auto& atom : atoms) {
    if (atom.is_boxed())
      a.set(atom, eval_world(m, w, Formula::just(atom.term(), atom.body())));
    else
      a.set(atom, m.valuation(w, atom.index()));
  }
  return a;
}

} // namespace gen
