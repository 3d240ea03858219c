#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gjl/calculus.hpp"
#include "gjl/fitting.hpp"
#include "gjl/goedel.hpp"
#include "gjl/mkrtychev.hpp"
#include "gjl/parse.hpp"
#include "gjl/syntax.hpp"

namespace gjl {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Line {
  std::size_t number; // 1-based
  std::string text;
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t line_no = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      out.push_back({line_no, std::string(text.substr(start, i - start))});
      start = i + 1;
      ++line_no;
    }
  }
  return out;
}

inline Cursor line_cursor(const Line& line) {
  try {
    return Cursor(lex(line.text));
  } catch (const parse_error& e) {
    throw io_error("line " + std::to_string(line.number) + ": " + e.what());
  }
}

[[noreturn]] inline void line_fail(const Line& line, const std::string& what) {
  throw io_error("line " + std::to_string(line.number) + ": " + what);
}

inline Value read_value(Cursor& cur, const Line& line) {
  const Token& t = cur.peek();
  if (t.kind != TokKind::Number) line_fail(line, "expected a rational value, found '" + t.text + "'");
  auto v = Value::parse(t.text);
  if (!v) line_fail(line, "not a rational in [0,1]: '" + t.text + "'");
  cur.next();
  return *v;
}

inline std::string read_ident(Cursor& cur, const Line& line, const char* what) {
  const Token& t = cur.peek();
  if (t.kind != TokKind::Ident)
    line_fail(line, std::string("expected ") + what + ", found '" + t.text + "'");
  cur.next();
  return t.text;
}

inline void expect_line_end(Cursor& cur, const Line& line) {
  if (!cur.at_end()) line_fail(line, "trailing input: '" + cur.peek().text + "'");
}

/// Section header: an identifier followed by a colon; the rest of the line
/// is treated as a first entry.
inline bool is_section(const Line& line, std::string& name, std::string& rest) {
  Cursor cur = line_cursor(line);
  if (cur.peek().kind != TokKind::Ident) return false;
  const std::string ident = cur.peek().text;
  cur.next();
  if (cur.peek().kind != TokKind::Colon) return false;
  if (ident != "worlds" && ident != "defaults" && ident != "signature" && ident != "R" &&
      ident != "E" && ident != "e" && ident != "default")
    return false;
  name = ident;
  const std::size_t colon_end = cur.peek().offset + 1;
  rest = line.text.substr(std::min(colon_end, line.text.size()));
  return true;
}

template <typename Fn>
inline void for_entries(std::string_view text, Fn&& handle) {
  std::string section;
  for (const Line& raw : split_lines(text)) {
    Cursor probe = line_cursor(raw);
    if (probe.at_end()) continue;
    std::string name, rest;
    if (is_section(raw, name, rest)) {
      section = name;
      Line inline_entry{raw.number, rest};
      Cursor cur = line_cursor(inline_entry);
      if (!cur.at_end()) handle(section, inline_entry);
      continue;
    }
    if (section.empty()) line_fail(raw, "entry before any section header");
    handle(section, raw);
  }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Possible-world model files
// ---------------------------------------------------------------------------

/// Sections: `worlds:` ids, `defaults:` three rationals (accessibility,
/// evidence, valuation), `signature:` term/formula pairs, `R:` triples
/// `w v value`, `E:` quadruples `term formula world value`, `e:` triples
/// `w pN value`. The worlds section must precede entries that name worlds.
inline GJModel read_gj_model(std::string_view text) {
  GJModel m;
  bool have_worlds = false;
  detail::for_entries(text, [&](const std::string& section, const detail::Line& line) {
    Cursor cur = detail::line_cursor(line);
    try {
      if (section == "worlds") {
        while (!cur.at_end()) m.add_world(detail::read_ident(cur, line, "a world id"));
        have_worlds = true;
      } else if (section == "defaults") {
        m.set_rel_default(detail::read_value(cur, line));
        m.set_evidence_default(detail::read_value(cur, line));
        m.set_valuation_default(detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else if (section == "signature") {
        TermPtr t = parse_term(cur);
        FormulaPtr f = parse_formula(cur);
        detail::expect_line_end(cur, line);
        m.add_signature(std::move(t), std::move(f));
      } else if (section == "R") {
        if (!have_worlds) detail::line_fail(line, "worlds must be declared first");
        const std::size_t from = m.world_index(detail::read_ident(cur, line, "a world id"));
        const std::size_t to = m.world_index(detail::read_ident(cur, line, "a world id"));
        m.set_rel(from, to, detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else if (section == "E") {
        if (!have_worlds) detail::line_fail(line, "worlds must be declared first");
        TermPtr t = parse_term(cur);
        FormulaPtr f = parse_formula(cur);
        const std::size_t w = m.world_index(detail::read_ident(cur, line, "a world id"));
        m.set_evidence(std::move(t), std::move(f), w, detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else if (section == "e") {
        if (!have_worlds) detail::line_fail(line, "worlds must be declared first");
        const std::size_t w = m.world_index(detail::read_ident(cur, line, "a world id"));
        FormulaPtr atom = parse_formula(cur);
        if (atom->kind() != FormulaKind::Atom)
          detail::line_fail(line, "valuation entries need an atom pN");
        m.set_valuation(w, atom->index(), detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else {
        detail::line_fail(line, "section '" + section + ":' does not belong in a model file");
      }
    } catch (const parse_error& e) {
      detail::line_fail(line, e.what());
    } catch (const eval_error& e) {
      detail::line_fail(line, e.what());
    }
  });
  if (m.worlds().empty()) throw io_error("model file declares no worlds");
  return m;
}

inline std::string write_gj_model(const GJModel& m) {
  std::ostringstream out;
  out << "worlds:";
  for (const auto& w : m.worlds()) out << ' ' << w;
  out << '\n';
  out << "defaults: " << m.rel_default().str() << ' ' << m.evidence_default().str() << ' '
      << m.valuation_default().str() << '\n';
  if (!m.signature().empty()) {
    out << "signature:\n";
    for (const auto& pair : m.signature())
      out << print_term(pair.term) << ' ' << print_formula(pair.formula) << '\n';
  }
  if (!m.rel_entries().empty()) {
    out << "R:\n";
    for (const auto& [key, v] : m.rel_entries())
      out << m.worlds()[key.first] << ' ' << m.worlds()[key.second] << ' ' << v.str() << '\n';
  }
  if (!m.evidence_entries().empty()) {
    out << "E:\n";
    for (const auto& [key, v] : m.evidence_entries())
      out << print_term(key.pair.term) << ' ' << print_formula(key.pair.formula) << ' '
          << m.worlds()[key.world] << ' ' << v.str() << '\n';
  }
  if (!m.valuation_entries().empty()) {
    out << "e:\n";
    for (const auto& [key, v] : m.valuation_entries())
      out << m.worlds()[key.first] << " p" << key.second << ' ' << v.str() << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// World-free model files
// ---------------------------------------------------------------------------

/// Sections as for possible-world models, minus `worlds:`/`R:`; `defaults:`
/// holds two rationals (evidence, valuation), `E:` entries are
/// `term formula value`, `e:` entries `pN value`.
inline GMModel read_gm_model(std::string_view text) {
  GMModel m;
  detail::for_entries(text, [&](const std::string& section, const detail::Line& line) {
    Cursor cur = detail::line_cursor(line);
    try {
      if (section == "defaults") {
        m.set_evidence_default(detail::read_value(cur, line));
        m.set_valuation_default(detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else if (section == "signature") {
        TermPtr t = parse_term(cur);
        FormulaPtr f = parse_formula(cur);
        detail::expect_line_end(cur, line);
        m.add_signature(std::move(t), std::move(f));
      } else if (section == "E") {
        TermPtr t = parse_term(cur);
        FormulaPtr f = parse_formula(cur);
        m.set_evidence(std::move(t), std::move(f), detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else if (section == "e") {
        FormulaPtr atom = parse_formula(cur);
        if (atom->kind() != FormulaKind::Atom)
          detail::line_fail(line, "valuation entries need an atom pN");
        m.set_valuation(atom->index(), detail::read_value(cur, line));
        detail::expect_line_end(cur, line);
      } else {
        detail::line_fail(line, "section '" + section +
                                   ":' does not belong in a world-free model file");
      }
    } catch (const parse_error& e) {
      detail::line_fail(line, e.what());
    }
  });
  return m;
}

inline std::string write_gm_model(const GMModel& m) {
  std::ostringstream out;
  out << "defaults: " << m.evidence_default().str() << ' ' << m.valuation_default().str() << '\n';
  if (!m.signature().empty()) {
    out << "signature:\n";
    for (const auto& pair : m.signature())
      out << print_term(pair.term) << ' ' << print_formula(pair.formula) << '\n';
  }
  if (!m.evidence_entries().empty()) {
    out << "E:\n";
    for (const auto& [pair, v] : m.evidence_entries())
      out << print_term(pair.term) << ' ' << print_formula(pair.formula) << ' ' << v.str() << '\n';
  }
  if (!m.valuation_entries().empty()) {
    out << "e:\n";
    for (const auto& [atom, v] : m.valuation_entries()) out << 'p' << atom << ' ' << v.str() << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignment files
// ---------------------------------------------------------------------------

/// Lines `atom value` where the atom is either pN or a justification
/// assertion t:phi naming a boxed atom; an optional `default:` section sets
/// the value of unmapped atoms.
inline Assignment read_assignment(std::string_view text) {
  Assignment a;
  bool have_default = false;
  for (const detail::Line& raw : detail::split_lines(text)) {
    Cursor cur = detail::line_cursor(raw);
    if (cur.at_end()) continue;
    std::string name, rest;
    if (detail::is_section(raw, name, rest)) {
      if (name != "default") detail::line_fail(raw, "unexpected section '" + name + ":'");
      if (have_default) detail::line_fail(raw, "duplicate default");
      detail::Line inline_entry{raw.number, rest};
      Cursor dcur = detail::line_cursor(inline_entry);
      a.set_default(detail::read_value(dcur, inline_entry));
      detail::expect_line_end(dcur, inline_entry);
      have_default = true;
      continue;
    }
    try {
      FormulaPtr f = parse_formula(cur);
      const Value v = detail::read_value(cur, raw);
      detail::expect_line_end(cur, raw);
      if (f->kind() == FormulaKind::Atom)
        a.set(StarAtom::plain(f->index()), v);
      else if (f->kind() == FormulaKind::Just)
        a.set(StarAtom::boxed(f->body(), f->term()), v);
      else
        detail::line_fail(raw, "assignment entries need pN or t:phi");
    } catch (const parse_error& e) {
      detail::line_fail(raw, e.what());
    }
  }
  return a;
}

inline std::string write_assignment(const Assignment& a) {
  std::ostringstream out;
  out << "default: " << a.default_value().str() << '\n';
  for (const auto& [atom, v] : a.entries()) out << print_atom(atom) << ' ' << v.str() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Derivation files
// ---------------------------------------------------------------------------

/// One step per line: `formula ; premise <i> | axiom | cs | mp <i> <j>`.
/// Indices are 1-based; `mp i j` names the minor premise phi at step i and
/// the major premise phi -> psi at step j. The premise list is collected
/// from the `premise` steps.
inline Derivation read_derivation(std::string_view text, Calculus calc, ConstantSpec cs) {
  Derivation d;
  d.calc = calc;
  d.cs = std::move(cs);

  std::map<std::size_t, FormulaPtr> premise_formulas;

  for (const detail::Line& raw : detail::split_lines(text)) {
    Cursor cur = detail::line_cursor(raw);
    if (cur.at_end()) continue;
    try {
      FormulaPtr f = parse_formula(cur);
      cur.expect(TokKind::Semicolon, "';'");
      const std::string rule = detail::read_ident(cur, raw, "premise, axiom, cs or mp");
      auto read_index = [&]() -> std::size_t {
        const Token& t = cur.peek();
        if (t.kind != TokKind::Number || t.text.find('/') != std::string::npos)
          detail::line_fail(raw, "expected a step index, found '" + t.text + "'");
        cur.next();
        const unsigned long v = std::stoul(t.text);
        if (v == 0) detail::line_fail(raw, "step indices are 1-based");
        return static_cast<std::size_t>(v - 1);
      };
      if (rule == "premise") {
        const std::size_t idx = read_index();
        auto [it, inserted] = premise_formulas.emplace(idx, f);
        if (!inserted && !equal(it->second, f))
          detail::line_fail(raw, "premise " + std::to_string(idx + 1) +
                                     " already introduced with a different formula");
        d.steps.push_back({std::move(f), StepRule::Premise, idx, 0});
      } else if (rule == "axiom") {
        d.steps.push_back({std::move(f), StepRule::Axiom, 0, 0});
      } else if (rule == "cs") {
        d.steps.push_back({std::move(f), StepRule::Cs, 0, 0});
      } else if (rule == "mp") {
        const std::size_t minor = read_index();
        const std::size_t major = read_index();
        d.steps.push_back({std::move(f), StepRule::Mp, minor, major});
      } else {
        detail::line_fail(raw, "unknown justification '" + rule + "'");
      }
      detail::expect_line_end(cur, raw);
    } catch (const parse_error& e) {
      detail::line_fail(raw, e.what());
    }
  }

  if (!premise_formulas.empty()) {
    const std::size_t count = premise_formulas.rbegin()->first + 1;
    for (std::size_t i = 0; i < count; ++i) {
      auto it = premise_formulas.find(i);
      if (it == premise_formulas.end())
        throw io_error("premise " + std::to_string(i + 1) + " is never introduced");
      d.premises.push_back(it->second);
    }
  }
  return d;
}

inline std::string write_derivation(const Derivation& d) {
  std::ostringstream out;
  for (const Step& st : d.steps) {
    out << print_formula(st.formula) << " ; ";
    switch (st.rule) {
      case StepRule::Premise: out << "premise " << st.ref1 + 1; break;
      case StepRule::Axiom: out << "axiom"; break;
      case StepRule::Cs: out << "cs"; break;
      case StepRule::Mp: out << "mp " << st.ref1 + 1 << ' ' << st.ref2 + 1; break;
    }
    out << '\n';
  }
  return out.str();
}

/// One formula per line; blank lines and comments are skipped.
inline std::vector<FormulaPtr> read_formula_lines(std::string_view text) {
  std::vector<FormulaPtr> out;
  for (const detail::Line& raw : detail::split_lines(text)) {
    Cursor cur = detail::line_cursor(raw);
    if (cur.at_end()) continue;
    try {
      out.push_back(parse_formula(cur));
      detail::expect_line_end(cur, raw);
    } catch (const parse_error& e) {
      detail::line_fail(raw, e.what());
    }
  }
  return out;
}

} // namespace gjl
