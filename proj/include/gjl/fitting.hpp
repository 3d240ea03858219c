#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gjl/calculus.hpp"
#include "gjl/goedel.hpp"
#include "gjl/syntax.hpp"
#include "gjl/value.hpp"

namespace gjl {

using WorldId = std::string;

struct eval_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TermFormula {
  TermPtr term;
  FormulaPtr formula;
};

inline int compare(const TermFormula& a, const TermFormula& b) {
  if (int c = compare(a.term, b.term)) return c;
  return compare(a.formula, b.formula);
}

struct TermFormulaLess {
  bool operator()(const TermFormula& a, const TermFormula& b) const { return compare(a, b) < 0; }
};

using SignatureSet = std::set<TermFormula, TermFormulaLess>;

/// Finite fuzzy possible-world model: worlds, a fuzzy accessibility function,
/// an admissible-evidence function and an atom valuation. Accessibility,
/// evidence and valuation are finite maps made total by per-map defaults.
/// Closure conditions are only enforced over the explicit signature; every
/// justification assertion that is evaluated must have its pair in the
/// signature, which is checked at evaluation time.
class GJModel {
public:
  std::size_t add_world(const WorldId& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    worlds_.push_back(id);
    index_.emplace(id, worlds_.size() - 1);
    return worlds_.size() - 1;
  }

  const std::vector<WorldId>& worlds() const { return worlds_; }

  std::size_t world_index(const WorldId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw eval_error("unknown world id: " + id);
    return it->second;
  }

  void set_rel_default(Value v) { rel_default_ = v; }
  const Value& rel_default() const { return rel_default_; }
  void set_rel(std::size_t from, std::size_t to, Value v) { rel_[{from, to}] = v; }
  const Value& rel(std::size_t from, std::size_t to) const {
    auto it = rel_.find({from, to});
    return it == rel_.end() ? rel_default_ : it->second;
  }

  void set_evidence_default(Value v) { evidence_default_ = v; }
  const Value& evidence_default() const { return evidence_default_; }
  void set_evidence(TermPtr t, FormulaPtr f, std::size_t world, Value v) {
    evidence_[EvKey{TermFormula{std::move(t), std::move(f)}, world}] = v;
  }
  const Value& evidence(const TermPtr& t, const FormulaPtr& f, std::size_t world) const {
    auto it = evidence_.find(EvKey{TermFormula{t, f}, world});
    return it == evidence_.end() ? evidence_default_ : it->second;
  }

  void set_valuation_default(Value v) { valuation_default_ = v; }
  const Value& valuation_default() const { return valuation_default_; }
  void set_valuation(std::size_t world, unsigned atom, Value v) { valuation_[{world, atom}] = v; }
  const Value& valuation(std::size_t world, unsigned atom) const {
    auto it = valuation_.find({world, atom});
    return it == valuation_.end() ? valuation_default_ : it->second;
  }

  void add_signature(TermPtr t, FormulaPtr f) {
    signature_.insert(TermFormula{std::move(t), std::move(f)});
  }
  bool in_signature(const TermPtr& t, const FormulaPtr& f) const {
    return signature_.count(TermFormula{t, f}) != 0;
  }
  const SignatureSet& signature() const { return signature_; }

  // Raw access for serialization.
  const std::map<std::pair<std::size_t, std::size_t>, Value>& rel_entries() const { return rel_; }
  const std::map<std::pair<std::size_t, unsigned>, Value>& valuation_entries() const {
    return valuation_;
  }
  struct EvKey {
    TermFormula pair;
    std::size_t world;
  };
  struct EvKeyLess {
    bool operator()(const EvKey& a, const EvKey& b) const {
      if (int c = compare(a.pair, b.pair)) return c < 0;
      return a.world < b.world;
    }
  };
  const std::map<EvKey, Value, EvKeyLess>& evidence_entries() const { return evidence_; }

private:
  std::vector<WorldId> worlds_;
  std::map<WorldId, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Value> rel_;
  std::map<std::pair<std::size_t, unsigned>, Value> valuation_;
  std::map<EvKey, Value, EvKeyLess> evidence_;
  SignatureSet signature_;
  Value rel_default_ = Value::zero();
  Value evidence_default_ = Value::one();
  Value valuation_default_ = Value::zero();
};

inline Value eval_world(const GJModel& m, std::size_t w, const FormulaPtr& f);

/// Necessity value at a world: the minimum over all worlds of the residuum
/// of accessibility into the local value.
inline Value eval_box(const GJModel& m, std::size_t w, const FormulaPtr& f) {
  if (m.worlds().empty()) throw eval_error("model has no worlds");
  if (w >= m.worlds().size()) throw eval_error("world index out of range");
  Value acc = Value::one();
  for (std::size_t v = 0; v < m.worlds().size(); ++v)
    acc = std::min(acc, residuum(m.rel(w, v), eval_world(m, v, f)));
  return acc;
}

inline Value eval_world(const GJModel& m, std::size_t w, const FormulaPtr& f) {
  if (m.worlds().empty()) throw eval_error("model has no worlds");
  if (w >= m.worlds().size()) throw eval_error("world index out of range");
  switch (f->kind()) {
    case FormulaKind::Bottom:
      return Value::zero();
    case FormulaKind::Atom:
      return m.valuation(w, f->index());
    case FormulaKind::And:
      return tnorm(eval_world(m, w, f->left()), eval_world(m, w, f->right()));
    case FormulaKind::Implies:
      return residuum(eval_world(m, w, f->left()), eval_world(m, w, f->right()));
    case FormulaKind::Just: {
      if (!m.in_signature(f->term(), f->body()))
        throw eval_error("justification assertion outside the model signature: " +
                         print_formula(f));
      return tnorm(m.evidence(f->term(), f->body(), w), eval_box(m, w, f->body()));
    }
  }
  throw std::logic_error("unreachable");
}

inline Value eval_world(const GJModel& m, const WorldId& w, const FormulaPtr& f) {
  return eval_world(m, m.world_index(w), f);
}

inline Value eval_box(const GJModel& m, const WorldId& w, const FormulaPtr& f) {
  return eval_box(m, m.world_index(w), f);
}

// ---------------------------------------------------------------------------
// Well-formedness: the two closure conditions on the evidence function
// ---------------------------------------------------------------------------

struct ClosureViolation {
  int condition; // 1: application, 2: sum
  TermPtr t;
  TermPtr s;
  FormulaPtr phi;
  FormulaPtr psi; // condition 1 only
  WorldId world;
  Value lhs;
  Value rhs;
};

/// Checks both closure conditions over every pair of signature entries with
/// fitting shapes and every world. Conclusion values are looked up through
/// the evidence map and its default, so a conclusion outside the signature
/// participates with the default value. Violations are data, not errors.
inline std::vector<ClosureViolation> check_closure(const GJModel& m) {
  std::vector<ClosureViolation> out;
  const auto& sig = m.signature();
  for (const auto& a : sig) {
    const bool a_impl = a.formula->kind() == FormulaKind::Implies;
    for (const auto& b : sig) {
      // (i): E(t, phi -> psi, w) * E(s, phi, w) <= E([t.s], psi, w)
      if (a_impl && equal(a.formula->left(), b.formula)) {
        const TermPtr ts = Term::app(a.term, b.term);
        const FormulaPtr& psi = a.formula->right();
        for (std::size_t w = 0; w < m.worlds().size(); ++w) {
          const Value lhs = tnorm(m.evidence(a.term, a.formula, w), m.evidence(b.term, b.formula, w));
          const Value rhs = m.evidence(ts, psi, w);
          if (lhs > rhs)
            out.push_back({1, a.term, b.term, b.formula, psi, m.worlds()[w], lhs, rhs});
        }
      }
      // (ii): E(t, phi, w) (+) E(s, phi, w) <= E([t+s], phi, w)
      if (equal(a.formula, b.formula)) {
        const TermPtr ts = Term::sum(a.term, b.term);
        for (std::size_t w = 0; w < m.worlds().size(); ++w) {
          const Value lhs = oplus(m.evidence(a.term, a.formula, w), m.evidence(b.term, b.formula, w));
          const Value rhs = m.evidence(ts, a.formula, w);
          if (lhs > rhs)
            out.push_back({2, a.term, b.term, a.formula, nullptr, m.worlds()[w], lhs, rhs});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model classes
// ---------------------------------------------------------------------------

enum class ModelClass { GJ, GJT, GJ4, GLP, GJ45, GJT45 };

inline const char* model_class_name(ModelClass c) {
  switch (c) {
    case ModelClass::GJ: return "GJ";
    case ModelClass::GJT: return "GJT";
    case ModelClass::GJ4: return "GJ4";
    case ModelClass::GLP: return "GLP";
    case ModelClass::GJ45: return "GJ45";
    case ModelClass::GJT45: return "GJT45";
  }
  return "?";
}

struct Classification {
  std::set<ModelClass> classes;
  bool crisp = false;

  bool in(ModelClass c) const { return classes.count(c) != 0; }
};

/// Decides every class predicate over the worlds and the signature. The
/// strong-evidence predicate evaluates t:phi, which needs signature coverage
/// of phi's justification subformulas; a pair whose coverage is missing
/// simply fails the predicate.
inline Classification classify(const GJModel& m) {
  Classification res;
  const std::size_t n = m.worlds().size();
  if (n == 0) return res;

  const bool well_formed = check_closure(m).empty();

  bool crisp = true, reflexive = true, transitive = true;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v) {
      const Value& r = m.rel(w, v);
      if (!r.is_zero() && !r.is_one()) crisp = false;
    }
  for (std::size_t w = 0; w < n; ++w)
    if (!m.rel(w, w).is_one()) reflexive = false;
  for (std::size_t w = 0; w < n && transitive; ++w)
    for (std::size_t v = 0; v < n && transitive; ++v)
      for (std::size_t u = 0; u < n; ++u)
        if (tnorm(m.rel(w, v), m.rel(v, u)) > m.rel(w, u)) {
          transitive = false;
          break;
        }

  bool monotone = true, pos_introspective = true, neg_introspective = true, strong_evidence = true;
  for (const auto& pair : m.signature()) {
    const FormulaPtr assertion = Formula::just(pair.term, pair.formula);
    for (std::size_t w = 0; w < n; ++w) {
      const Value& ev = m.evidence(pair.term, pair.formula, w);
      for (std::size_t v = 0; v < n; ++v)
        if (tnorm(ev, m.rel(w, v)) > m.evidence(pair.term, pair.formula, v)) monotone = false;
      if (ev > m.evidence(Term::bang(pair.term), assertion, w)) pos_introspective = false;
      if (neg_value(ev) > m.evidence(Term::query(pair.term), Formula::neg(assertion), w))
        neg_introspective = false;
      if (strong_evidence) {
        try {
          if (ev > eval_world(m, w, assertion)) strong_evidence = false;
        } catch (const eval_error&) {
          strong_evidence = false;
        }
      }
    }
  }

  res.crisp = crisp;
  if (!well_formed) return res;
  res.classes.insert(ModelClass::GJ);
  if (reflexive) res.classes.insert(ModelClass::GJT);
  const bool four = monotone && transitive && pos_introspective;
  if (four) res.classes.insert(ModelClass::GJ4);
  if (four && reflexive) res.classes.insert(ModelClass::GLP);
  const bool four5 = four && neg_introspective && strong_evidence;
  if (four5) res.classes.insert(ModelClass::GJ45);
  if (four5 && reflexive) res.classes.insert(ModelClass::GJT45);
  return res;
}

// ---------------------------------------------------------------------------
// Constant specification respect
// ---------------------------------------------------------------------------

struct CsRespect {
  struct Violation {
    FormulaPtr member; // the full member c:phi
    WorldId world;
    Value value;
  };
  bool respected = true;            // over the members whose pair is in scope
  std::vector<Violation> violations;
  std::vector<FormulaPtr> unverifiable; // extensional members outside the signature
};

/// Checks E(c, phi, w) = 1 for every member c:phi of the specification. An
/// intensional specification is checked restricted to the signature; an
/// extensional member whose pair is outside the signature is reported as
/// unverifiable rather than silently passed.
inline CsRespect respects_cs(const GJModel& m, const ConstantSpec& cs) {
  CsRespect res;
  auto check_pair = [&](const TermPtr& c, const FormulaPtr& body, const FormulaPtr& member) {
    for (std::size_t w = 0; w < m.worlds().size(); ++w) {
      const Value& v = m.evidence(c, body, w);
      if (!v.is_one()) {
        res.violations.push_back({member, m.worlds()[w], v});
        res.respected = false;
      }
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

// ---------------------------------------------------------------------------
// Entailment over finite model lists
// ---------------------------------------------------------------------------

enum class EntailMode { Leq, One };

struct EntailResult {
  bool holds = true;
  std::size_t model = 0;  // witness on failure
  WorldId world;
};

/// Checks the selected consequence relation over every world of every model:
/// pointwise value dominance for Leq, preservation of value 1 for One.
template <typename ModelRange>
inline EntailResult entails(const ModelRange& models, const std::vector<FormulaPtr>& premises,
                            const FormulaPtr& goal, EntailMode mode) {
  EntailResult res;
  std::size_t mi = 0;
  for (const auto& m : models) {
    for (std::size_t w = 0; w < m.worlds().size(); ++w) {
      Value prem = Value::one();
      for (const auto& p : premises) prem = std::min(prem, eval_world(m, w, p));
      const Value goal_v = eval_world(m, w, goal);
      const bool fails = mode == EntailMode::Leq ? prem > goal_v
                                                 : prem.is_one() && !goal_v.is_one();
      if (fails) {
        res.holds = false;
        res.model = mi;
        res.world = m.worlds()[w];
        return res;
      }
    }
    ++mi;
  }
  return res;
}

} // namespace gjl
