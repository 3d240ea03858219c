#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gjl {

// ---------------------------------------------------------------------------
// Justification terms
// ---------------------------------------------------------------------------

enum class TermKind { Var, Const, App, Sum, Bang, Query };

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Term variables come in three surface families x<N>, t<N>, s<N> sharing one
/// index space: x<N> -> N, t<N> -> 1000000+N, s<N> -> 2000000+N. Family
/// indices are capped at 999999 so the ranges never collide.
inline constexpr unsigned kVarFamilyStride = 1000000;

class Term {
public:
  static TermPtr var(unsigned index) { return leaf(TermKind::Var, index); }
  static TermPtr constant(unsigned index) { return leaf(TermKind::Const, index); }
  static TermPtr app(TermPtr f, TermPtr a) { return node(TermKind::App, std::move(f), std::move(a)); }
  static TermPtr sum(TermPtr a, TermPtr b) { return node(TermKind::Sum, std::move(a), std::move(b)); }
  static TermPtr bang(TermPtr t) { return node(TermKind::Bang, std::move(t), nullptr); }
  static TermPtr query(TermPtr t) { return node(TermKind::Query, std::move(t), nullptr); }

  TermKind kind() const { return kind_; }
  unsigned index() const { return index_; }
  const TermPtr& left() const { return left_; }
  const TermPtr& right() const { return right_; }
  const TermPtr& inner() const { return left_; }

private:
  static std::shared_ptr<Term> leaf(TermKind k, unsigned index) {
    if (index == 0)
      throw std::invalid_argument("term index must be positive");
    auto t = std::make_shared<Term>();
    t->kind_ = k;
    t->index_ = index;
    return t;
  }
  static std::shared_ptr<Term> node(TermKind k, TermPtr a, TermPtr b) {
    auto t = std::make_shared<Term>();
    t->kind_ = k;
    t->left_ = std::move(a);
    t->right_ = std::move(b);
    return t;
  }

  TermKind kind_ = TermKind::Var;
  unsigned index_ = 1;
  TermPtr left_;
  TermPtr right_;
};

inline int compare(const Term& a, const Term& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Var:
    case TermKind::Const:
      if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
      return 0;
    case TermKind::App:
    case TermKind::Sum: {
      if (int c = compare(*a.left(), *b.left())) return c;
      return compare(*a.right(), *b.right());
    }
    case TermKind::Bang:
    case TermKind::Query:
      return compare(*a.inner(), *b.inner());
  }
  return 0;
}

inline int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

inline bool equal(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Formulas of the justification language
// ---------------------------------------------------------------------------

enum class FormulaKind { Bottom, Atom, And, Implies, Just };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  static FormulaPtr bottom() {
    static const FormulaPtr instance = make(FormulaKind::Bottom);
    return instance;
  }
  static FormulaPtr atom(unsigned index) {
    if (index == 0)
      throw std::invalid_argument("atom index must be positive");
    auto f = make(FormulaKind::Atom);
    f->index_ = index;
    return f;
  }
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
    auto f = make(FormulaKind::And);
    f->left_ = std::move(a);
    f->right_ = std::move(b);
    return f;
  }
  static FormulaPtr impl(FormulaPtr a, FormulaPtr b) {
    auto f = make(FormulaKind::Implies);
    f->left_ = std::move(a);
    f->right_ = std::move(b);
    return f;
  }
  static FormulaPtr just(TermPtr t, FormulaPtr body) {
    auto f = make(FormulaKind::Just);
    f->term_ = std::move(t);
    f->left_ = std::move(body);
    return f;
  }

  // Derived connectives expand immediately; the stored tree only ever
  // contains bottom, atoms, conjunction, implication and t:.
  static FormulaPtr neg(FormulaPtr a) { return impl(std::move(a), bottom()); }
  static FormulaPtr top() { return impl(bottom(), bottom()); }
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
    return conj(impl(a, b), impl(b, a));
  }
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
    return conj(impl(impl(a, b), b), impl(impl(b, a), a));
  }

  FormulaKind kind() const { return kind_; }
  unsigned index() const { return index_; }
  const FormulaPtr& left() const { return left_; }
  const FormulaPtr& right() const { return right_; }
  const FormulaPtr& body() const { return left_; }
  const TermPtr& term() const { return term_; }

private:
  static std::shared_ptr<Formula> make(FormulaKind k) {
    auto f = std::make_shared<Formula>();
    f->kind_ = k;
    return f;
  }

  FormulaKind kind_ = FormulaKind::Bottom;
  unsigned index_ = 0;
  FormulaPtr left_;
  FormulaPtr right_;
  TermPtr term_;
};

inline int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case FormulaKind::Bottom:
      return 0;
    case FormulaKind::Atom:
      if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
      return 0;
    case FormulaKind::And:
    case FormulaKind::Implies: {
      if (int c = compare(*a.left(), *b.left())) return c;
      return compare(*a.right(), *b.right());
    }
    case FormulaKind::Just: {
      if (int c = compare(*a.term(), *b.term())) return c;
      return compare(*a.body(), *b.body());
    }
  }
  return 0;
}

inline int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

using FormulaSet = std::set<FormulaPtr, FormulaLess>;

// ---------------------------------------------------------------------------
// The augmented propositional language: star atoms and star formulas
// ---------------------------------------------------------------------------

/// Either a plain propositional variable p<N> or a boxed atom: the fresh
/// variable standing for t:phi, identified by the pair (phi, t).
class StarAtom {
public:
  static StarAtom plain(unsigned index) {
    if (index == 0)
      throw std::invalid_argument("atom index must be positive");
    StarAtom a;
    a.index_ = index;
    return a;
  }
  static StarAtom boxed(FormulaPtr body, TermPtr term) {
    StarAtom a;
    a.body_ = std::move(body);
    a.term_ = std::move(term);
    return a;
  }

  bool is_boxed() const { return body_ != nullptr; }
  unsigned index() const { return index_; }
  const FormulaPtr& body() const { return body_; }
  const TermPtr& term() const { return term_; }

private:
  unsigned index_ = 0;
  FormulaPtr body_;
  TermPtr term_;
};

inline int compare(const StarAtom& a, const StarAtom& b) {
  if (a.is_boxed() != b.is_boxed()) return a.is_boxed() ? 1 : -1;
  if (!a.is_boxed()) {
    if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
    return 0;
  }
  if (int c = compare(a.term(), b.term())) return c;
  return compare(a.body(), b.body());
}

inline bool operator==(const StarAtom& a, const StarAtom& b) { return compare(a, b) == 0; }

struct StarAtomLess {
  bool operator()(const StarAtom& a, const StarAtom& b) const { return compare(a, b) < 0; }
};

using StarAtomSet = std::set<StarAtom, StarAtomLess>;

enum class StarKind { Bottom, Atom, And, Implies };

class StarFormula;
using StarFormulaPtr = std::shared_ptr<const StarFormula>;

class StarFormula {
public:
  static StarFormulaPtr bottom() {
    static const StarFormulaPtr instance = make(StarKind::Bottom);
    return instance;
  }
  static StarFormulaPtr atom(StarAtom a) {
    auto f = make(StarKind::Atom);
    f->atom_ = std::move(a);
    return f;
  }
  static StarFormulaPtr conj(StarFormulaPtr a, StarFormulaPtr b) {
    auto f = make(StarKind::And);
    f->left_ = std::move(a);
    f->right_ = std::move(b);
    return f;
  }
  static StarFormulaPtr impl(StarFormulaPtr a, StarFormulaPtr b) {
    auto f = make(StarKind::Implies);
    f->left_ = std::move(a);
    f->right_ = std::move(b);
    return f;
  }
  static StarFormulaPtr neg(StarFormulaPtr a) { return impl(std::move(a), bottom()); }
  static StarFormulaPtr disj(StarFormulaPtr a, StarFormulaPtr b) {
    return conj(impl(impl(a, b), b), impl(impl(b, a), a));
  }

  StarKind kind() const { return kind_; }
  const StarAtom& atom_ref() const { return atom_; }
  const StarFormulaPtr& left() const { return left_; }
  const StarFormulaPtr& right() const { return right_; }

private:
  static std::shared_ptr<StarFormula> make(StarKind k) {
    auto f = std::make_shared<StarFormula>();
    f->kind_ = k;
    return f;
  }

  StarKind kind_ = StarKind::Bottom;
  StarAtom atom_ = StarAtom::plain(1);
  StarFormulaPtr left_;
  StarFormulaPtr right_;
};

inline int compare(const StarFormula& a, const StarFormula& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case StarKind::Bottom:
      return 0;
    case StarKind::Atom:
      return compare(a.atom_ref(), b.atom_ref());
    case StarKind::And:
    case StarKind::Implies: {
      if (int c = compare(*a.left(), *b.left())) return c;
      return compare(*a.right(), *b.right());
    }
  }
  return 0;
}

inline int compare(const StarFormulaPtr& a, const StarFormulaPtr& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

inline bool equal(const StarFormulaPtr& a, const StarFormulaPtr& b) {
  return compare(a, b) == 0;
}

struct StarFormulaLess {
  bool operator()(const StarFormulaPtr& a, const StarFormulaPtr& b) const {
    return compare(a, b) < 0;
  }
};

// ---------------------------------------------------------------------------
// Star translation and its inverse
// ---------------------------------------------------------------------------

/// Homomorphic on bottom, atoms, conjunction and implication; sends every
/// justification subformula t:phi to the boxed atom (phi, t).
inline StarFormulaPtr star(const FormulaPtr& f) {
  switch (f->kind()) {
    case FormulaKind::Bottom:
      return StarFormula::bottom();
    case FormulaKind::Atom:
      return StarFormula::atom(StarAtom::plain(f->index()));
    case FormulaKind::And:
      return StarFormula::conj(star(f->left()), star(f->right()));
    case FormulaKind::Implies:
      return StarFormula::impl(star(f->left()), star(f->right()));
    case FormulaKind::Just:
      return StarFormula::atom(StarAtom::boxed(f->body(), f->term()));
  }
  throw std::logic_error("unreachable");
}

/// Two-sided inverse of star: boxed atoms become t:phi again.
inline FormulaPtr unstar(const StarFormulaPtr& f) {
  switch (f->kind()) {
    case StarKind::Bottom:
      return Formula::bottom();
    case StarKind::Atom: {
      const StarAtom& a = f->atom_ref();
      if (a.is_boxed()) return Formula::just(a.term(), a.body());
      return Formula::atom(a.index());
    }
    case StarKind::And:
      return Formula::conj(unstar(f->left()), unstar(f->right()));
    case StarKind::Implies:
      return Formula::impl(unstar(f->left()), unstar(f->right()));
  }
  throw std::logic_error("unreachable");
}

inline FormulaPtr unstar_atom(const StarAtom& a) {
  if (a.is_boxed()) return Formula::just(a.term(), a.body());
  return Formula::atom(a.index());
}

/// Star atoms occurring in a star formula.
inline void collect_atoms(const StarFormulaPtr& f, StarAtomSet& out) {
  switch (f->kind()) {
    case StarKind::Bottom:
      return;
    case StarKind::Atom:
      out.insert(f->atom_ref());
      return;
    case StarKind::And:
    case StarKind::Implies:
      collect_atoms(f->left(), out);
      collect_atoms(f->right(), out);
      return;
  }
}

inline StarAtomSet collect_atoms(const StarFormulaPtr& f) {
  StarAtomSet out;
  collect_atoms(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Subformula closure
// ---------------------------------------------------------------------------

inline void subformula_closure_into(const FormulaPtr& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f->kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return;
    case FormulaKind::And:
    case FormulaKind::Implies:
      subformula_closure_into(f->left(), out);
      subformula_closure_into(f->right(), out);
      return;
    case FormulaKind::Just:
      subformula_closure_into(f->body(), out);
      return;
  }
}

/// Smallest superset closed under immediate subformulas, including the
/// bodies of justification assertions.
inline FormulaSet subformula_closure(const FormulaSet& fs) {
  FormulaSet out;
  for (const auto& f : fs) subformula_closure_into(f, out);
  return out;
}

inline FormulaSet subformula_closure(const std::vector<FormulaPtr>& fs) {
  FormulaSet out;
  for (const auto& f : fs) subformula_closure_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing (minimal parentheses; parse(print(f)) == f)
// ---------------------------------------------------------------------------

inline std::string print_term(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Var: {
      const unsigned i = t->index();
      if (i <= kVarFamilyStride)
        return "x" + std::to_string(i);
      if (i <= 2 * kVarFamilyStride)
        return "t" + std::to_string(i - kVarFamilyStride);
      return "s" + std::to_string(i - 2 * kVarFamilyStride);
    }
    case TermKind::Const:
      return "c" + std::to_string(t->index());
    case TermKind::App:
      return "[" + print_term(t->left()) + "." + print_term(t->right()) + "]";
    case TermKind::Sum:
      return "[" + print_term(t->left()) + "+" + print_term(t->right()) + "]";
    case TermKind::Bang:
      return "!" + print_term(t->inner());
    case TermKind::Query:
      return "?" + print_term(t->inner());
  }
  throw std::logic_error("unreachable");
}

namespace detail {

// Precedence: implication 1 (right associative), conjunction 2 (left
// associative), justification prefix and leaves 3.
inline int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies: return 1;
    case FormulaKind::And: return 2;
    default: return 3;
  }
}

inline void print_formula_rec(const FormulaPtr& f, int min_prec, std::string& out) {
  const int prec = formula_prec(*f);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f->kind()) {
    case FormulaKind::Bottom:
      out += "bot";
      break;
    case FormulaKind::Atom:
      out += 'p';
      out += std::to_string(f->index());
      break;
    case FormulaKind::Implies:
      print_formula_rec(f->left(), 2, out);
      out += " -> ";
      print_formula_rec(f->right(), 1, out);
      break;
    case FormulaKind::And:
      print_formula_rec(f->left(), 2, out);
      out += " & ";
      print_formula_rec(f->right(), 3, out);
      break;
    case FormulaKind::Just:
      out += print_term(f->term());
      out += ':';
      print_formula_rec(f->body(), 3, out);
      break;
  }
  if (parens) out += ')';
}

} // namespace detail

inline std::string print_formula(const FormulaPtr& f) {
  std::string out;
  detail::print_formula_rec(f, 1, out);
  return out;
}

/// Star formulas display through their inverse translation; the grammar
/// round-trips them losslessly since the translation is a bijection.
inline std::string print_star(const StarFormulaPtr& f) { return print_formula(unstar(f)); }

inline std::string print_atom(const StarAtom& a) { return print_formula(unstar_atom(a)); }

} // namespace gjl
