#pragma once

#include <map>
#include <set>
#include <vector>

#include "gjl/calculus.hpp"
#include "gjl/fitting.hpp"
#include "gjl/goedel.hpp"
#include "gjl/syntax.hpp"
#include "gjl/value.hpp"

namespace gjl {

/// World-free model: the justification modality is evaluated by the
/// admissible-evidence function alone. Same finite-support plus signature
/// strategy as the possible-world models.
class GMModel {
public:
  void set_evidence_default(Value v) { evidence_default_ = v; }
  const Value& evidence_default() const { return evidence_default_; }
  void set_evidence(TermPtr t, FormulaPtr f, Value v) {
    evidence_[TermFormula{std::move(t), std::move(f)}] = v;
  }
  const Value& evidence(const TermPtr& t, const FormulaPtr& f) const {
    auto it = evidence_.find(TermFormula{t, f});
    return it == evidence_.end() ? evidence_default_ : it->second;
  }

  void set_valuation_default(Value v) { valuation_default_ = v; }
  const Value& valuation_default() const { return valuation_default_; }
  void set_valuation(unsigned atom, Value v) { valuation_[atom] = v; }
  const Value& valuation(unsigned atom) const {
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? valuation_default_ : it->second;
  }

  void add_signature(TermPtr t, FormulaPtr f) {
    signature_.insert(TermFormula{std::move(t), std::move(f)});
  }
  bool in_signature(const TermPtr& t, const FormulaPtr& f) const {
    return signature_.count(TermFormula{t, f}) != 0;
  }
  const SignatureSet& signature() const { return signature_; }

  const std::map<TermFormula, Value, TermFormulaLess>& evidence_entries() const {
    return evidence_;
  }
  const std::map<unsigned, Value>& valuation_entries() const { return valuation_; }

private:
  std::map<TermFormula, Value, TermFormulaLess> evidence_;
  std::map<unsigned, Value> valuation_;
  SignatureSet signature_;
  Value evidence_default_ = Value::one();
  Value valuation_default_ = Value::zero();
};

inline Value eval_m(const GMModel& m, const FormulaPtr& f) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
      return Value::zero();
    case FormulaKind::Atom:
      return m.valuation(f->index());
    case FormulaKind::And:
      return tnorm(eval_m(m, f->left()), eval_m(m, f->right()));
    case FormulaKind::Implies:
      return residuum(eval_m(m, f->left()), eval_m(m, f->right()));
    case FormulaKind::Just:
      if (!m.in_signature(f->term(), f->body()))
        throw eval_error("justification assertion outside the model signature: " +
                         print_formula(f));
      return m.evidence(f->term(), f->body());
  }
  throw std::logic_error("unreachable");
}

/// Closure conditions, as for possible-world models but world-free.
inline std::vector<ClosureViolation> check_closure_m(const GMModel& m) {
  std::vector<ClosureViolation> out;
  const auto& sig = m.signature();
  for (const auto& a : sig) {
    const bool a_impl = a.formula->kind() == FormulaKind::Implies;
    for (const auto& b : sig) {
      if (a_impl && equal(a.formula->left(), b.formula)) {
        const Value lhs = tnorm(m.evidence(a.term, a.formula), m.evidence(b.term, b.formula));
        const Value rhs = m.evidence(Term::app(a.term, b.term), a.formula->right());
        if (lhs > rhs)
          out.push_back({1, a.term, b.term, b.formula, a.formula->right(), "", lhs, rhs});
      }
      if (equal(a.formula, b.formula)) {
        const Value lhs = oplus(m.evidence(a.term, a.formula), m.evidence(b.term, b.formula));
        const Value rhs = m.evidence(Term::sum(a.term, b.term), a.formula);
        if (lhs > rhs) out.push_back({2, a.term, b.term, a.formula, nullptr, "", lhs, rhs});
      }
    }
  }
  return out;
}

enum class MkClass { GM, GMT, GM4, GMLP, GM45, GMT45 };

inline const char* mk_class_name(MkClass c) {
  switch (c) {
    case MkClass::GM: return "GM";
    case MkClass::GMT: return "GMT";
    case MkClass::GM4: return "GM4";
    case MkClass::GMLP: return "GMLP";
    case MkClass::GM45: return "GM45";
    case MkClass::GMT45: return "GMT45";
  }
  return "?";
}

/// Per-condition predicates over the signature. The factivity condition (1)
/// compares against the extended evaluation, so it needs signature coverage
/// of the body; a pair without coverage fails the predicate. GMT45 is the
/// conjunction of conditions (1) and (4) exactly as defined; it does not
/// include (2).
inline std::set<MkClass> classify_m(const GMModel& m) {
  std::set<MkClass> res;
  if (!check_closure_m(m).empty()) return res;
  res.insert(MkClass::GM);

  bool c1 = true, c2 = true, c4 = true;
  for (const auto& pair : m.signature()) {
    const Value& ev = m.evidence(pair.term, pair.formula);
    if (c1) {
      try {
        if (ev > eval_m(m, pair.formula)) c1 = false;
      } catch (const eval_error&) {
        c1 = false;
      }
    }
    const FormulaPtr assertion = Formula::just(pair.term, pair.formula);
    if (ev > m.evidence(Term::bang(pair.term), assertion)) c2 = false;
    if (neg_value(ev) > m.evidence(Term::query(pair.term), Formula::neg(assertion))) c4 = false;
  }

  if (c1) res.insert(MkClass::GMT);
  if (c2) res.insert(MkClass::GM4);
  if (c1 && c2) res.insert(MkClass::GMLP);
  if (c2 && c4) res.insert(MkClass::GM45);
  if (c1 && c4) res.insert(MkClass::GMT45);
  return res;
}

/// The single-world possible-world reading: one world, nulled accessibility,
/// the same evidence and valuation. Evaluation agrees with eval_m on every
/// signature-respecting formula because the box value is constantly 1.
inline GJModel fitting_of_mkrtychev(const GMModel& m, const WorldId& world = "w") {
  GJModel out;
  const std::size_t w = out.add_world(world);
  out.set_rel_default(Value::zero());
  out.set_evidence_default(m.evidence_default());
  out.set_valuation_default(m.valuation_default());
  for (const auto& [pair, v] : m.evidence_entries()) out.set_evidence(pair.term, pair.formula, w, v);
  for (const auto& [atom, v] : m.valuation_entries()) out.set_valuation(w, atom, v);
  for (const auto& pair : m.signature()) out.add_signature(pair.term, pair.formula);
  return out;
}

inline CsRespect respects_cs_m(const GMModel& m, const ConstantSpec& cs) {
  CsRespect res;
  auto check_pair = [&](const TermPtr& c, const FormulaPtr& body, const FormulaPtr& member) {
    const Value& v = m.evidence(c, body);
    if (!v.is_one()) {
      res.violations.push_back({member, "", v});
      res.respected = false;
    }
  };
  if (cs.is_intensional()) {
    for (const auto& pair : m.signature()) {
      if (pair.term->kind() != TermKind::Const) continue;
      const FormulaPtr member = Formula::just(pair.term, pair.formula);
      if (cs.contains(member)) check_pair(pair.term, pair.formula, member);
    }
  } else {
    for (const auto& member : cs.members()) {
      if (!m.in_signature(member->term(), member->body())) {
        res.unverifiable.push_back(member);
        continue;
      }
      check_pair(member->term(), member->body(), member);
    }
  }
  return res;
}

} // namespace gjl
