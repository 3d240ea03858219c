#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gjl/syntax.hpp"

namespace gjl {

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t offset, std::vector<std::string> expected, std::string found)
      : std::runtime_error(render(offset, expected, found)),
        offset_(offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  static std::string render(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": found " + found;
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
        msg += expected[i];
      }
    }
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

enum class TokKind {
  Ident,      // p1, x1, t1, s1, c1, bot, top, w1, ...
  Number,     // 3 or 3/4
  LParen, RParen, LBracket, RBracket,
  Amp, Bar, Arrow, Iff, Tilde, Bang, Question, Colon, Dot, Plus, Semicolon,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t offset;
};

/// Lexes a whole input. '#' starts a comment running to end of line.
inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](TokKind k, std::size_t start, std::size_t len) {
    out.push_back(Token{k, std::string(text.substr(start, len)), start});
  };
  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i + 1;
      while (j < n && ((text[j] >= 'a' && text[j] <= 'z') || (text[j] >= 'A' && text[j] <= 'Z') ||
                       (text[j] >= '0' && text[j] <= '9') || text[j] == '_'))
        ++j;
      push(TokKind::Ident, i, j - i);
      i = j;
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i + 1;
      while (j < n && text[j] >= '0' && text[j] <= '9') ++j;
      if (j < n && text[j] == '/') {
        std::size_t k = j + 1;
        while (k < n && text[k] >= '0' && text[k] <= '9') ++k;
        if (k == j + 1)
          throw parse_error(j, {"digits"}, "'/'");
        j = k;
      }
      push(TokKind::Number, i, j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(TokKind::LParen, i, 1); ++i; continue;
      case ')': push(TokKind::RParen, i, 1); ++i; continue;
      case '[': push(TokKind::LBracket, i, 1); ++i; continue;
      case ']': push(TokKind::RBracket, i, 1); ++i; continue;
      case '&': push(TokKind::Amp, i, 1); ++i; continue;
      case '|': push(TokKind::Bar, i, 1); ++i; continue;
      case '~': push(TokKind::Tilde, i, 1); ++i; continue;
      case '!': push(TokKind::Bang, i, 1); ++i; continue;
      case '?': push(TokKind::Question, i, 1); ++i; continue;
      case ':': push(TokKind::Colon, i, 1); ++i; continue;
      case '.': push(TokKind::Dot, i, 1); ++i; continue;
      case '+': push(TokKind::Plus, i, 1); ++i; continue;
      case ';': push(TokKind::Semicolon, i, 1); ++i; continue;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          push(TokKind::Arrow, i, 2);
          i += 2;
          continue;
        }
        throw parse_error(i, {"'->'"}, "'-'");
      case '<':
        if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
          push(TokKind::Iff, i, 3);
          i += 3;
          continue;
        }
        throw parse_error(i, {"'<->'"}, "'<'");
      default:
        throw parse_error(i, {}, std::string("'") + c + "'");
    }
  }
  out.push_back(Token{TokKind::End, "", n});
  return out;
}

/// Token stream cursor. Formula and term parsing are maximal-munch, so a
/// cursor can be shared with surrounding line-oriented readers.
class Cursor {
public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return toks_[pos_].kind == TokKind::End; }

  bool accept(TokKind k) {
    if (toks_[pos_].kind != k) return false;
    if (pos_ + 1 < toks_.size()) ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw parse_error(t.offset, std::move(expected), std::move(found));
  }

  void expect(TokKind k, const char* what) {
    if (!accept(k)) fail({what});
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline unsigned parse_index(const Token& tok, std::size_t prefix_len, unsigned cap) {
  std::string_view digits = std::string_view(tok.text).substr(prefix_len);
  if (!all_digits(digits))
    throw parse_error(tok.offset, {"an index like '" + tok.text.substr(0, prefix_len) + "1'"},
                      "'" + tok.text + "'");
  unsigned long v = 0;
  for (char c : digits) {
    v = v * 10 + static_cast<unsigned long>(c - '0');
    if (v > cap)
      throw parse_error(tok.offset, {"index <= " + std::to_string(cap)}, "'" + tok.text + "'");
  }
  if (v == 0)
    throw parse_error(tok.offset, {"a positive index"}, "'" + tok.text + "'");
  return static_cast<unsigned>(v);
}

inline bool starts_term(const Token& t) {
  switch (t.kind) {
    case TokKind::Bang:
    case TokKind::Question:
    case TokKind::LBracket:
      return true;
    case TokKind::Ident:
      return t.text.size() >= 2 &&
             (t.text[0] == 'x' || t.text[0] == 't' || t.text[0] == 's' || t.text[0] == 'c') &&
             all_digits(std::string_view(t.text).substr(1));
    default:
      return false;
  }
}

} // namespace detail

inline TermPtr parse_term(Cursor& cur);

namespace detail {

inline TermPtr parse_term_leaf(Cursor& cur) {
  const Token& t = cur.peek();
  switch (t.kind) {
    case TokKind::Bang:
      cur.next();
      return Term::bang(parse_term(cur));
    case TokKind::Question:
      cur.next();
      return Term::query(parse_term(cur));
    case TokKind::LBracket: {
      cur.next();
      TermPtr left = parse_term(cur);
      TermKind op;
      if (cur.accept(TokKind::Dot))
        op = TermKind::App;
      else if (cur.accept(TokKind::Plus))
        op = TermKind::Sum;
      else
        cur.fail({"'.'", "'+'"});
      TermPtr right = parse_term(cur);
      cur.expect(TokKind::RBracket, "']'");
      return op == TermKind::App ? Term::app(std::move(left), std::move(right))
                                 : Term::sum(std::move(left), std::move(right));
    }
    case TokKind::Ident: {
      if (!starts_term(t)) break;
      cur.next();
      const unsigned idx = parse_index(t, 1, kVarFamilyStride - 1);
      switch (t.text[0]) {
        case 'x': return Term::var(idx);
        case 't': return Term::var(kVarFamilyStride + idx);
        case 's': return Term::var(2 * kVarFamilyStride + idx);
        case 'c': return Term::constant(idx);
      }
      break;
    }
    default:
      break;
  }
  cur.fail({"a term (x1, t1, s1, c1, !, ?, '[')"});
}

} // namespace detail

inline TermPtr parse_term(Cursor& cur) { return detail::parse_term_leaf(cur); }

inline FormulaPtr parse_formula(Cursor& cur);

namespace detail {

inline FormulaPtr parse_unary(Cursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == TokKind::Tilde) {
    cur.next();
    return Formula::neg(parse_unary(cur));
  }
  if (starts_term(t)) {
    TermPtr term = parse_term(cur);
    cur.expect(TokKind::Colon, "':'");
    return Formula::just(std::move(term), parse_unary(cur));
  }
  if (t.kind == TokKind::LParen) {
    cur.next();
    FormulaPtr f = parse_formula(cur);
    cur.expect(TokKind::RParen, "')'");
    return f;
  }
  if (t.kind == TokKind::Ident) {
    if (t.text == "bot") {
      cur.next();
      return Formula::bottom();
    }
    if (t.text == "top") {
      cur.next();
      return Formula::top();
    }
    if (t.text.size() >= 2 && t.text[0] == 'p' && all_digits(std::string_view(t.text).substr(1))) {
      cur.next();
      return Formula::atom(parse_index(t, 1, 0xffffffu));
    }
  }
  cur.fail({"a formula (p1, bot, top, '~', '(', or a term followed by ':')"});
}

inline FormulaPtr parse_and(Cursor& cur) {
  FormulaPtr f = parse_unary(cur);
  while (cur.accept(TokKind::Amp)) f = Formula::conj(std::move(f), parse_unary(cur));
  return f;
}

inline FormulaPtr parse_or(Cursor& cur) {
  FormulaPtr f = parse_and(cur);
  while (cur.accept(TokKind::Bar)) f = Formula::disj(std::move(f), parse_and(cur));
  return f;
}

inline FormulaPtr parse_impl(Cursor& cur) {
  FormulaPtr f = parse_or(cur);
  if (cur.accept(TokKind::Arrow)) return Formula::impl(std::move(f), parse_impl(cur));
  return f;
}

inline FormulaPtr parse_iff(Cursor& cur) {
  FormulaPtr f = parse_impl(cur);
  while (cur.accept(TokKind::Iff)) f = Formula::iff(std::move(f), parse_impl(cur));
  return f;
}

} // namespace detail

/// Maximal-munch formula parse starting at the cursor.
inline FormulaPtr parse_formula(Cursor& cur) { return detail::parse_iff(cur); }

/// Parses a complete formula; trailing tokens are an error.
inline FormulaPtr parse_formula(std::string_view text) {
  Cursor cur(lex(text));
  FormulaPtr f = parse_formula(cur);
  if (!cur.at_end()) cur.fail({"end of input"});
  return f;
}

inline TermPtr parse_term(std::string_view text) {
  Cursor cur(lex(text));
  TermPtr t = parse_term(cur);
  if (!cur.at_end()) cur.fail({"end of input"});
  return t;
}

/// Parses a formula of the augmented propositional language: justification
/// subformulas are read atomically via the star translation.
inline StarFormulaPtr parse_star_formula(std::string_view text) {
  return star(parse_formula(text));
}

} // namespace gjl
