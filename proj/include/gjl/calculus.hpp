#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gjl/parse.hpp"
#include "gjl/syntax.hpp"

namespace gjl {

// ---------------------------------------------------------------------------
// Axiom schemas and calculi
// ---------------------------------------------------------------------------

enum class Schema { A1, A2, A3, A5a, A5b, A6, A7, G4, J, PlusL, PlusR, F, PI, NI };

enum class Calculus { G, GJ, GJT, GJ4, GLP, GJ45, GJT45 };

inline const char* schema_name(Schema s) {
  switch (s) {
    case Schema::A1: return "A1";
    case Schema::A2: return "A2";
    case Schema::A3: return "A3";
    case Schema::A5a: return "A5a";
    case Schema::A5b: return "A5b";
    case Schema::A6: return "A6";
    case Schema::A7: return "A7";
    case Schema::G4: return "G4";
    case Schema::J: return "J";
    case Schema::PlusL: return "+L";
    case Schema::PlusR: return "+R";
    case Schema::F: return "F";
    case Schema::PI: return "PI";
    case Schema::NI: return "NI";
  }
  return "?";
}

inline const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::G: return "g";
    case Calculus::GJ: return "gj";
    case Calculus::GJT: return "gjt";
    case Calculus::GJ4: return "gj4";
    case Calculus::GLP: return "glp";
    case Calculus::GJ45: return "gj45";
    case Calculus::GJT45: return "gjt45";
  }
  return "?";
}

inline std::optional<Calculus> parse_calculus(std::string_view name) {
  if (name == "g") return Calculus::G;
  if (name == "gj") return Calculus::GJ;
  if (name == "gjt") return Calculus::GJT;
  if (name == "gj4") return Calculus::GJ4;
  if (name == "glp") return Calculus::GLP;
  if (name == "gj45") return Calculus::GJ45;
  if (name == "gjt45") return Calculus::GJT45;
  return std::nullopt;
}

/// Schemas of a calculus, in the fixed matching order.
inline const std::vector<Schema>& axiom_schemas(Calculus c) {
  static const std::vector<Schema> prop = {Schema::A1, Schema::A2, Schema::A3, Schema::A5a,
                                           Schema::A5b, Schema::A6, Schema::A7, Schema::G4};
  auto extend = [](std::vector<Schema> extra) {
    std::vector<Schema> v = prop;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  static const std::vector<Schema> gj = extend({Schema::J, Schema::PlusL, Schema::PlusR});
  static const std::vector<Schema> gjt = extend({Schema::J, Schema::PlusL, Schema::PlusR, Schema::F});
  static const std::vector<Schema> gj4 = extend({Schema::J, Schema::PlusL, Schema::PlusR, Schema::PI});
  static const std::vector<Schema> glp =
      extend({Schema::J, Schema::PlusL, Schema::PlusR, Schema::F, Schema::PI});
  static const std::vector<Schema> gj45 =
      extend({Schema::J, Schema::PlusL, Schema::PlusR, Schema::PI, Schema::NI});
  static const std::vector<Schema> gjt45 =
      extend({Schema::J, Schema::PlusL, Schema::PlusR, Schema::F, Schema::PI, Schema::NI});
  switch (c) {
    case Calculus::G: return prop;
    case Calculus::GJ: return gj;
    case Calculus::GJT: return gjt;
    case Calculus::GJ4: return gj4;
    case Calculus::GLP: return glp;
    case Calculus::GJ45: return gj45;
    case Calculus::GJT45: return gjt45;
  }
  return prop;
}

/// Metavariable bindings of a successful schema match.
struct SchemaMatch {
  Schema schema;
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, TermPtr> terms;
};

namespace detail {

inline bool is_impl(const FormulaPtr& f) { return f->kind() == FormulaKind::Implies; }
inline bool is_and(const FormulaPtr& f) { return f->kind() == FormulaKind::And; }
inline bool is_just(const FormulaPtr& f) { return f->kind() == FormulaKind::Just; }
inline bool is_bottom(const FormulaPtr& f) { return f->kind() == FormulaKind::Bottom; }

inline bool match_schema(Schema s, const FormulaPtr& f, SchemaMatch& m) {
  auto bindf = [&m](const char* name, const FormulaPtr& g) { m.formulas[name] = g; };
  auto bindt = [&m](const char* name, const TermPtr& t) { m.terms[name] = t; };
  if (!is_impl(f)) return false;
  const FormulaPtr& l = f->left();
  const FormulaPtr& r = f->right();
  switch (s) {
    case Schema::A1: {
      // (phi -> psi) -> ((psi -> chi) -> (phi -> chi))
      if (!is_impl(l) || !is_impl(r)) return false;
      const FormulaPtr &phi = l->left(), &psi = l->right();
      const FormulaPtr &rl = r->left(), &rr = r->right();
      if (!is_impl(rl) || !is_impl(rr)) return false;
      if (!equal(rl->left(), psi)) return false;
      const FormulaPtr& chi = rl->right();
      if (!equal(rr->left(), phi) || !equal(rr->right(), chi)) return false;
      bindf("phi", phi); bindf("psi", psi); bindf("chi", chi);
      return true;
    }
    case Schema::A2: {
      // (phi & psi) -> phi
      if (!is_and(l)) return false;
      if (!equal(l->left(), r)) return false;
      bindf("phi", l->left()); bindf("psi", l->right());
      return true;
    }
    case Schema::A3: {
      // (phi & psi) -> (psi & phi)
      if (!is_and(l) || !is_and(r)) return false;
      if (!equal(l->left(), r->right()) || !equal(l->right(), r->left())) return false;
      bindf("phi", l->left()); bindf("psi", l->right());
      return true;
    }
    case Schema::A5a: {
      // (phi -> (psi -> chi)) -> ((phi & psi) -> chi)
      if (!is_impl(l) || !is_impl(l->right()) || !is_impl(r) || !is_and(r->left())) return false;
      const FormulaPtr &phi = l->left(), &psi = l->right()->left(), &chi = l->right()->right();
      if (!equal(r->left()->left(), phi) || !equal(r->left()->right(), psi) ||
          !equal(r->right(), chi))
        return false;
      bindf("phi", phi); bindf("psi", psi); bindf("chi", chi);
      return true;
    }
    case Schema::A5b: {
      // ((phi & psi) -> chi) -> (phi -> (psi -> chi))
      if (!is_impl(l) || !is_and(l->left()) || !is_impl(r) || !is_impl(r->right())) return false;
      const FormulaPtr &phi = l->left()->left(), &psi = l->left()->right(), &chi = l->right();
      if (!equal(r->left(), phi) || !equal(r->right()->left(), psi) ||
          !equal(r->right()->right(), chi))
        return false;
      bindf("phi", phi); bindf("psi", psi); bindf("chi", chi);
      return true;
    }
    case Schema::A6: {
      // ((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)
      if (!is_impl(l) || !is_impl(l->left()) || !is_impl(r)) return false;
      const FormulaPtr &phi = l->left()->left(), &psi = l->left()->right(), &chi = l->right();
      const FormulaPtr& rl = r->left();
      if (!is_impl(rl) || !is_impl(rl->left())) return false;
      if (!equal(rl->left()->left(), psi) || !equal(rl->left()->right(), phi) ||
          !equal(rl->right(), chi) || !equal(r->right(), chi))
        return false;
      bindf("phi", phi); bindf("psi", psi); bindf("chi", chi);
      return true;
    }
    case Schema::A7: {
      // bot -> phi
      if (!is_bottom(l)) return false;
      bindf("phi", r);
      return true;
    }
    case Schema::G4: {
      // phi -> (phi & phi)
      if (!is_and(r)) return false;
      if (!equal(r->left(), l) || !equal(r->right(), l)) return false;
      bindf("phi", l);
      return true;
    }
    case Schema::J: {
      // t:(phi -> psi) -> (s:phi -> [t.s]:psi)
      if (!is_just(l) || !is_impl(l->body()) || !is_impl(r)) return false;
      const TermPtr& t = l->term();
      const FormulaPtr &phi = l->body()->left(), &psi = l->body()->right();
      const FormulaPtr &rl = r->left(), &rr = r->right();
      if (!is_just(rl) || !is_just(rr)) return false;
      if (!equal(rl->body(), phi)) return false;
      const TermPtr& sterm = rl->term();
      if (rr->term()->kind() != TermKind::App) return false;
      if (!equal(rr->term()->left(), t) || !equal(rr->term()->right(), sterm)) return false;
      if (!equal(rr->body(), psi)) return false;
      bindf("phi", phi); bindf("psi", psi); bindt("t", t); bindt("s", sterm);
      return true;
    }
    case Schema::PlusL: {
      // t:phi -> [t+s]:phi
      if (!is_just(l) || !is_just(r)) return false;
      if (r->term()->kind() != TermKind::Sum) return false;
      if (!equal(r->term()->left(), l->term())) return false;
      if (!equal(r->body(), l->body())) return false;
      bindf("phi", l->body()); bindt("t", l->term()); bindt("s", r->term()->right());
      return true;
    }
    case Schema::PlusR: {
      // s:phi -> [t+s]:phi
      if (!is_just(l) || !is_just(r)) return false;
      if (r->term()->kind() != TermKind::Sum) return false;
      if (!equal(r->term()->right(), l->term())) return false;
      if (!equal(r->body(), l->body())) return false;
      bindf("phi", l->body()); bindt("t", r->term()->left()); bindt("s", l->term());
      return true;
    }
    case Schema::F: {
      // t:phi -> phi
      if (!is_just(l)) return false;
      if (!equal(l->body(), r)) return false;
      bindf("phi", r); bindt("t", l->term());
      return true;
    }
    case Schema::PI: {
      // t:phi -> !t:t:phi
      if (!is_just(l) || !is_just(r)) return false;
      if (r->term()->kind() != TermKind::Bang) return false;
      if (!equal(r->term()->inner(), l->term())) return false;
      if (!is_just(r->body())) return false;
      if (!equal(r->body()->term(), l->term()) || !equal(r->body()->body(), l->body()))
        return false;
      bindf("phi", l->body()); bindt("t", l->term());
      return true;
    }
    case Schema::NI: {
      // ~t:phi -> ?t:~t:phi, with ~a stored as a -> bot
      if (!is_impl(l) || !is_bottom(l->right()) || !is_just(l->left())) return false;
      const TermPtr& t = l->left()->term();
      const FormulaPtr& phi = l->left()->body();
      if (!is_just(r)) return false;
      if (r->term()->kind() != TermKind::Query || !equal(r->term()->inner(), t)) return false;
      if (!equal(r->body(), l)) return false;
      bindf("phi", phi); bindt("t", t);
      return true;
    }
  }
  return false;
}

} // namespace detail

/// First matching schema of the calculus, in the fixed order A1, A2, A3,
/// A5a, A5b, A6, A7, G4, J, +L, +R, F, PI, NI.
inline std::optional<SchemaMatch> match_axiom(const FormulaPtr& f, Calculus calc) {
  for (Schema s : axiom_schemas(calc)) {
    SchemaMatch m;
    m.schema = s;
    if (detail::match_schema(s, f, m)) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constant specifications
// ---------------------------------------------------------------------------

/// A chain c_n:...:c_1:phi, outermost constant first.
struct CsChain {
  std::vector<unsigned> constants;
  FormulaPtr innermost;
};

/// Greedy decomposition; axioms are implication-rooted, so peeling constant
/// justifications until the body is no longer of that shape is unambiguous.
inline std::optional<CsChain> cs_chain(const FormulaPtr& f) {
  CsChain chain;
  FormulaPtr cur = f;
  while (cur->kind() == FormulaKind::Just && cur->term()->kind() == TermKind::Const) {
    chain.constants.push_back(cur->term()->index());
    cur = cur->body();
  }
  if (chain.constants.empty()) return std::nullopt;
  chain.innermost = cur;
  return chain;
}

class ConstantSpec {
public:
  ConstantSpec() : calc_(Calculus::GJ), intensional_(false) {}

  /// The total specification: every constant justifies every axiom instance
  /// of the calculus, at every nesting depth.
  static ConstantSpec total(Calculus calc) {
    ConstantSpec cs;
    cs.calc_ = calc;
    cs.intensional_ = true;
    return cs;
  }

  static ConstantSpec none(Calculus calc) {
    ConstantSpec cs;
    cs.calc_ = calc;
    return cs;
  }

  /// Extensional specification from explicit members. Each member must be a
  /// chain of constant justifications over an axiom instance, and the set
  /// must be downward closed under removing the outermost constant.
  static ConstantSpec extensional(Calculus calc, const std::vector<FormulaPtr>& members) {
    ConstantSpec cs;
    cs.calc_ = calc;
    for (const auto& m : members) cs.members_.insert(m);
    for (const auto& m : cs.members_) {
      auto chain = cs_chain(m);
      if (!chain)
        throw std::invalid_argument("constant specification member is not of the form c:...:c:phi: " +
                                    print_formula(m));
      if (!match_axiom(chain->innermost, calc))
        throw std::invalid_argument("constant specification member body is not an axiom of " +
                                    std::string(calculus_name(calc)) + ": " +
                                    print_formula(chain->innermost));
      if (chain->constants.size() >= 2 && cs.members_.count(m->body()) == 0)
        throw std::invalid_argument("constant specification is not downward closed; missing " +
                                    print_formula(m->body()));
    }
    return cs;
  }

  Calculus calculus() const { return calc_; }
  bool is_intensional() const { return intensional_; }
  const FormulaSet& members() const { return members_; }

  bool contains(const FormulaPtr& f) const {
    if (intensional_) {
      auto chain = cs_chain(f);
      return chain && match_axiom(chain->innermost, calc_).has_value();
    }
    return members_.count(f) != 0;
  }

  /// A constant c with c:body in the specification, if any. The total
  /// specification always answers c1.
  std::optional<unsigned> witness_constant(const FormulaPtr& body) const {
    if (intensional_) {
      if (contains(Formula::just(Term::constant(1), body))) return 1u;
      return std::nullopt;
    }
    for (const auto& m : members_) {
      if (m->term()->kind() == TermKind::Const && equal(m->body(), body))
        return m->term()->index();
    }
    return std::nullopt;
  }

  /// Members of chain length <= bound that no member extends by one more
  /// constant. Extendability of arbitrary extensional sets is undecidable;
  /// this bounded check is what the tooling reports.
  std::vector<FormulaPtr> unextendable_members(unsigned bound) const {
    std::vector<FormulaPtr> out;
    if (intensional_) return out;
    for (const auto& m : members_) {
      auto chain = cs_chain(m);
      if (!chain || chain->constants.size() > bound) continue;
      if (!witness_constant(m)) out.push_back(m);
    }
    return out;
  }

private:
  Calculus calc_;
  bool intensional_ = false;
  FormulaSet members_;
};

// ---------------------------------------------------------------------------
// Derivations and checking
// ---------------------------------------------------------------------------

enum class StepRule { Premise, Axiom, Cs, Mp };

struct Step {
  FormulaPtr formula;
  StepRule rule;
  std::size_t ref1 = 0; // premise index, or the minor (phi) step of MP
  std::size_t ref2 = 0; // the major (phi -> psi) step of MP
};

struct Derivation {
  Calculus calc = Calculus::GJ;
  ConstantSpec cs;
  std::vector<FormulaPtr> premises;
  std::vector<Step> steps;

  const FormulaPtr& conclusion() const {
    if (steps.empty()) throw std::logic_error("empty derivation");
    return steps.back().formula;
  }
};

struct CheckFailure {
  std::size_t step; // 0-based
  std::string reason;
};

/// Verifies every step; returns the first failure, or nothing when the
/// derivation is valid.
inline std::optional<CheckFailure> check_derivation(const Derivation& d) {
  if (d.steps.empty()) return CheckFailure{0, "derivation has no steps"};
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    switch (st.rule) {
      case StepRule::Premise:
        if (st.ref1 >= d.premises.size())
          return CheckFailure{i, "premise index " + std::to_string(st.ref1 + 1) + " out of range"};
        if (!equal(d.premises[st.ref1], st.formula))
          return CheckFailure{i, "formula differs from premise " + std::to_string(st.ref1 + 1)};
        break;
      case StepRule::Axiom:
        if (!match_axiom(st.formula, d.calc))
          return CheckFailure{i, "not an instance of any axiom scheme of " +
                                     std::string(calculus_name(d.calc))};
        break;
      case StepRule::Cs:
        if (d.calc == Calculus::G)
          return CheckFailure{i, "the propositional calculus has no constant specification rule"};
        if (!d.cs.contains(st.formula))
          return CheckFailure{i, "formula is not in the constant specification"};
        break;
      case StepRule::Mp: {
        if (st.ref1 >= i || st.ref2 >= i)
          return CheckFailure{i, "modus ponens references a later or current step"};
        const FormulaPtr& minor = d.steps[st.ref1].formula;
        const FormulaPtr& major = d.steps[st.ref2].formula;
        if (major->kind() != FormulaKind::Implies || !equal(major->left(), minor) ||
            !equal(major->right(), st.formula))
          return CheckFailure{i, "modus ponens shape mismatch with steps " +
                                     std::to_string(st.ref1 + 1) + " and " +
                                     std::to_string(st.ref2 + 1)};
        break;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derivation construction helpers
// ---------------------------------------------------------------------------

/// Step-list builder used by the derivation transformations. The named
/// theorem emitters expand into axiom instances plus modus ponens, so every
/// produced derivation re-checks against the bare calculus.
class ProofBuilder {
public:
  ProofBuilder(Calculus calc, ConstantSpec cs, std::vector<FormulaPtr> premises) {
    d_.calc = calc;
    d_.cs = std::move(cs);
    d_.premises = std::move(premises);
  }

  const Derivation& derivation() const { return d_; }
  Derivation take() { return std::move(d_); }

  const FormulaPtr& formula(std::size_t step) const { return d_.steps[step].formula; }

  std::size_t premise(std::size_t index) {
    if (index >= d_.premises.size()) throw std::logic_error("premise index out of range");
    return push({d_.premises[index], StepRule::Premise, index, 0});
  }

  std::size_t axiom(FormulaPtr f) { return push({std::move(f), StepRule::Axiom, 0, 0}); }

  std::size_t cs(FormulaPtr f) { return push({std::move(f), StepRule::Cs, 0, 0}); }

  /// From phi (minor) and phi -> psi (major), infer psi.
  std::size_t mp(std::size_t minor, std::size_t major) {
    const FormulaPtr& mj = formula(major);
    if (mj->kind() != FormulaKind::Implies || !equal(mj->left(), formula(minor)))
      throw std::logic_error("internal modus ponens mismatch");
    return push({mj->right(), StepRule::Mp, minor, major});
  }

  /// |- a -> a
  std::size_t identity(const FormulaPtr& a) {
    const FormulaPtr aa = Formula::conj(a, a);
    const std::size_t g4 = axiom(Formula::impl(a, aa));
    const std::size_t a1 = axiom(Formula::impl(
        Formula::impl(a, aa),
        Formula::impl(Formula::impl(aa, a), Formula::impl(a, a))));
    const std::size_t step = mp(g4, a1);
    const std::size_t proj = axiom(Formula::impl(aa, a));
    return mp(proj, step);
  }

  /// |- a -> (b -> a)
  std::size_t weakening(const FormulaPtr& a, const FormulaPtr& b) {
    const FormulaPtr ab = Formula::conj(a, b);
    const std::size_t proj = axiom(Formula::impl(ab, a));
    const std::size_t exp = axiom(Formula::impl(Formula::impl(ab, a),
                                                Formula::impl(a, Formula::impl(b, a))));
    return mp(proj, exp);
  }

  /// From a -> b and b -> c, infer a -> c.
  std::size_t chain(std::size_t ab, std::size_t bc) {
    const FormulaPtr& fab = formula(ab);
    const FormulaPtr& fbc = formula(bc);
    if (fab->kind() != FormulaKind::Implies || fbc->kind() != FormulaKind::Implies ||
        !equal(fab->right(), fbc->left()))
      throw std::logic_error("internal chain mismatch");
    const std::size_t a1 = axiom(Formula::impl(
        fab, Formula::impl(fbc, Formula::impl(fab->left(), fbc->right()))));
    const std::size_t step = mp(ab, a1);
    return mp(bc, step);
  }

  /// |- (x -> (y -> z)) -> (y -> (x -> z))
  std::size_t permutation(const FormulaPtr& x, const FormulaPtr& y, const FormulaPtr& z) {
    const FormulaPtr xy = Formula::conj(x, y);
    const FormulaPtr yx = Formula::conj(y, x);
    const FormulaPtr goal_l = Formula::impl(x, Formula::impl(y, z));
    const std::size_t imp = axiom(Formula::impl(goal_l, Formula::impl(xy, z)));
    const std::size_t swap = axiom(Formula::impl(yx, xy));
    const std::size_t a1 = axiom(Formula::impl(
        Formula::impl(yx, xy),
        Formula::impl(Formula::impl(xy, z), Formula::impl(yx, z))));
    const std::size_t s4 = mp(swap, a1);
    const std::size_t s5 = chain(imp, s4);
    const std::size_t exp = axiom(Formula::impl(Formula::impl(yx, z),
                                                Formula::impl(y, Formula::impl(x, z))));
    return chain(s5, exp);
  }

  /// |- (a -> (a -> b)) -> (a -> b)
  std::size_t contraction(const FormulaPtr& a, const FormulaPtr& b) {
    const FormulaPtr aa = Formula::conj(a, a);
    const std::size_t imp = axiom(Formula::impl(Formula::impl(a, Formula::impl(a, b)),
                                                Formula::impl(aa, b)));
    const std::size_t g4 = axiom(Formula::impl(a, aa));
    const std::size_t a1 = axiom(Formula::impl(
        Formula::impl(a, aa),
        Formula::impl(Formula::impl(aa, b), Formula::impl(a, b))));
    const std::size_t s4 = mp(g4, a1);
    return chain(imp, s4);
  }

  /// |- a -> (b -> (a & b))
  std::size_t pairing(const FormulaPtr& a, const FormulaPtr& b) {
    const FormulaPtr ab = Formula::conj(a, b);
    const std::size_t id = identity(ab);
    const std::size_t exp = axiom(Formula::impl(Formula::impl(ab, ab),
                                                Formula::impl(a, Formula::impl(b, ab))));
    return mp(id, exp);
  }

  /// From u -> v and u -> w, infer u -> (v & w).
  std::size_t pair_under(std::size_t uv, std::size_t uw) {
    const FormulaPtr& fuv = formula(uv);
    const FormulaPtr& fuw = formula(uw);
    if (fuv->kind() != FormulaKind::Implies || fuw->kind() != FormulaKind::Implies ||
        !equal(fuv->left(), fuw->left()))
      throw std::logic_error("internal pairing mismatch");
    const FormulaPtr &u = fuv->left(), &v = fuv->right(), &w = fuw->right();
    const FormulaPtr vw = Formula::conj(v, w);
    const std::size_t pt = pairing(v, w);
    const std::size_t s2 = chain(uv, pt); // u -> (w -> (v & w))
    const std::size_t pm = permutation(u, w, vw);
    const std::size_t s4 = mp(s2, pm); // w -> (u -> (v & w))
    const std::size_t s5 = chain(uw, s4); // u -> (u -> (v & w))
    const std::size_t ct = contraction(u, vw);
    return mp(s5, ct);
  }

  /// From u -> x and u -> (x -> y), infer u -> y.
  std::size_t compose(std::size_t ux, std::size_t uxy) {
    const FormulaPtr& fux = formula(ux);
    const FormulaPtr& fuxy = formula(uxy);
    if (fux->kind() != FormulaKind::Implies || fuxy->kind() != FormulaKind::Implies ||
        fuxy->right()->kind() != FormulaKind::Implies ||
        !equal(fux->left(), fuxy->left()) || !equal(fux->right(), fuxy->right()->left()))
      throw std::logic_error("internal composition mismatch");
    const FormulaPtr &x = fux->right(), &xy = fuxy->right();
    const FormulaPtr& y = xy->right();
    const std::size_t pr = pair_under(uxy, ux); // u -> ((x -> y) & x)
    const std::size_t id = identity(xy);
    const std::size_t imp = axiom(Formula::impl(Formula::impl(xy, xy),
                                                Formula::impl(Formula::conj(xy, x), y)));
    const std::size_t s4 = mp(id, imp); // ((x -> y) & x) -> y
    return chain(pr, s4);
  }

  /// |- (a -> (b -> c)) -> ((a -> b) -> (a -> c))
  std::size_t distribution(const FormulaPtr& a, const FormulaPtr& b, const FormulaPtr& c) {
    const FormulaPtr big = Formula::impl(a, Formula::impl(b, c)); // D
    const FormulaPtr small = Formula::impl(a, b);                 // E
    const FormulaPtr de = Formula::conj(big, small);
    const FormulaPtr u = Formula::conj(de, a);
    const std::size_t p1 = axiom(Formula::impl(u, de));
    const std::size_t swap = axiom(Formula::impl(u, Formula::conj(a, de)));
    const std::size_t proj_a = axiom(Formula::impl(Formula::conj(a, de), a));
    const std::size_t p2 = chain(swap, proj_a); // u -> a
    const std::size_t proj_d = axiom(Formula::impl(de, big));
    const std::size_t p3 = chain(p1, proj_d); // u -> D
    const std::size_t swap_de = axiom(Formula::impl(de, Formula::conj(small, big)));
    const std::size_t proj_e = axiom(Formula::impl(Formula::conj(small, big), small));
    const std::size_t pr2 = chain(swap_de, proj_e);
    const std::size_t p4 = chain(p1, pr2); // u -> E
    const std::size_t p5 = compose(p2, p4); // u -> b
    const std::size_t p6 = compose(p2, p3); // u -> (b -> c)
    const std::size_t p7 = compose(p5, p6); // u -> c
    const std::size_t e1 = axiom(Formula::impl(Formula::impl(u, c),
                                               Formula::impl(de, Formula::impl(a, c))));
    const std::size_t w = mp(p7, e1);
    const std::size_t e2 = axiom(Formula::impl(
        Formula::impl(de, Formula::impl(a, c)),
        Formula::impl(big, Formula::impl(small, Formula::impl(a, c)))));
    return mp(w, e2);
  }

private:
  std::size_t push(Step st) {
    d_.steps.push_back(std::move(st));
    return d_.steps.size() - 1;
  }

  Derivation d_;
};

// ---------------------------------------------------------------------------
// Deduction theorem
// ---------------------------------------------------------------------------

/// Turns a derivation of phi from premises including alpha into a derivation
/// of alpha -> phi from the remaining premises, under the same calculus and
/// constant specification.
inline Derivation deduction_transform(const Derivation& d, const FormulaPtr& alpha) {
  if (auto fail = check_derivation(d))
    throw std::invalid_argument("invalid derivation at step " + std::to_string(fail->step + 1) +
                                ": " + fail->reason);

  std::vector<FormulaPtr> kept;
  std::vector<std::size_t> premise_map(d.premises.size(), SIZE_MAX);
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    if (equal(d.premises[i], alpha)) continue;
    premise_map[i] = kept.size();
    kept.push_back(d.premises[i]);
  }

  ProofBuilder b(d.calc, d.cs, std::move(kept));
  std::vector<std::size_t> lifted(d.steps.size());

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    switch (st.rule) {
      case StepRule::Premise:
        if (premise_map[st.ref1] == SIZE_MAX) {
          lifted[i] = b.identity(alpha);
        } else {
          const std::size_t base = b.premise(premise_map[st.ref1]);
          const std::size_t weak = b.weakening(st.formula, alpha);
          lifted[i] = b.mp(base, weak);
        }
        break;
      case StepRule::Axiom: {
        const std::size_t base = b.axiom(st.formula);
        const std::size_t weak = b.weakening(st.formula, alpha);
        lifted[i] = b.mp(base, weak);
        break;
      }
      case StepRule::Cs: {
        const std::size_t base = b.cs(st.formula);
        const std::size_t weak = b.weakening(st.formula, alpha);
        lifted[i] = b.mp(base, weak);
        break;
      }
      case StepRule::Mp:
        lifted[i] = b.compose(lifted[st.ref1], lifted[st.ref2]);
        break;
    }
  }
  return b.take();
}

// ---------------------------------------------------------------------------
// Internalization
// ---------------------------------------------------------------------------

struct LiftResult {
  TermPtr term;
  Derivation derivation;
};

/// Constructive internalization: from a derivation of phi from psi_1..psi_n
/// and terms t_1..t_n, builds a term t and a derivation of t:phi from
/// t_1:psi_1 .. t_n:psi_n. Axiom and specification steps need a witnessing
/// constant in the specification and fail loudly without one.
inline LiftResult lift(const Derivation& d, const std::vector<TermPtr>& terms) {
  if (d.calc == Calculus::G)
    throw std::invalid_argument("cannot lift inside the propositional calculus");
  if (terms.size() != d.premises.size())
    throw std::invalid_argument("lift needs exactly one term per premise");
  if (auto fail = check_derivation(d))
    throw std::invalid_argument("invalid derivation at step " + std::to_string(fail->step + 1) +
                                ": " + fail->reason);

  std::vector<FormulaPtr> boxed;
  boxed.reserve(d.premises.size());
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    boxed.push_back(Formula::just(terms[i], d.premises[i]));

  ProofBuilder b(d.calc, d.cs, std::move(boxed));
  std::vector<std::size_t> out(d.steps.size());
  std::vector<TermPtr> evidence(d.steps.size());

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    switch (st.rule) {
      case StepRule::Premise:
        out[i] = b.premise(st.ref1);
        evidence[i] = terms[st.ref1];
        break;
      case StepRule::Axiom:
      case StepRule::Cs: {
        const auto c = d.cs.witness_constant(st.formula);
        if (!c)
          throw std::invalid_argument(
              "constant specification provides no constant justifying " +
              print_formula(st.formula));
        evidence[i] = Term::constant(*c);
        out[i] = b.cs(Formula::just(evidence[i], st.formula));
        break;
      }
      case StepRule::Mp: {
        const TermPtr& u = evidence[st.ref2]; // justifies psi -> phi
        const TermPtr& v = evidence[st.ref1]; // justifies psi
        const FormulaPtr& psi = d.steps[st.ref1].formula;
        evidence[i] = Term::app(u, v);
        const FormulaPtr j_inst = Formula::impl(
            Formula::just(u, Formula::impl(psi, st.formula)),
            Formula::impl(Formula::just(v, psi), Formula::just(evidence[i], st.formula)));
        const std::size_t ax = b.axiom(j_inst);
        const std::size_t s1 = b.mp(out[st.ref2], ax);
        out[i] = b.mp(out[st.ref1], s1);
        break;
      }
    }
  }
  return LiftResult{evidence.back(), b.take()};
}

// ---------------------------------------------------------------------------
// Translation into the propositional calculus
// ---------------------------------------------------------------------------

struct TranslateResult {
  /// Derivation over the augmented propositional language, displayed through
  /// the inverse star translation. Checks under the propositional calculus
  /// with the used theorems adjoined as premises.
  Derivation propositional;
  /// Axiom and specification steps that are not propositional axiom
  /// instances, in first-use order. Their star translations are the finite
  /// fragment of translated theorems this derivation touches.
  std::vector<FormulaPtr> used_theorems;
};

inline TranslateResult translate_derivation(const Derivation& d) {
  if (auto fail = check_derivation(d))
    throw std::invalid_argument("invalid derivation at step " + std::to_string(fail->step + 1) +
                                ": " + fail->reason);

  TranslateResult res;
  res.propositional.calc = Calculus::G;
  res.propositional.cs = ConstantSpec::none(Calculus::G);
  res.propositional.premises = d.premises;

  FormulaSet seen;
  std::map<FormulaPtr, std::size_t, FormulaLess> theorem_index;

  auto theorem_premise = [&](const FormulaPtr& f) -> std::size_t {
    auto it = theorem_index.find(f);
    if (it != theorem_index.end()) return it->second;
    const std::size_t idx = d.premises.size() + res.used_theorems.size();
    theorem_index.emplace(f, idx);
    res.used_theorems.push_back(f);
    res.propositional.premises.push_back(f);
    return idx;
  };

  for (const Step& st : d.steps) {
    switch (st.rule) {
      case StepRule::Premise:
      case StepRule::Mp:
        res.propositional.steps.push_back(st);
        break;
      case StepRule::Axiom:
        if (match_axiom(st.formula, Calculus::G)) {
          res.propositional.steps.push_back(st);
        } else {
          res.propositional.steps.push_back(
              Step{st.formula, StepRule::Premise, theorem_premise(st.formula), 0});
        }
        break;
      case StepRule::Cs:
        res.propositional.steps.push_back(
            Step{st.formula, StepRule::Premise, theorem_premise(st.formula), 0});
        break;
    }
  }
  return res;
}

} // namespace gjl
