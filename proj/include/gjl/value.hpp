#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gjl {

/// Exact rational truth value in the unit interval.
///
/// The semantics never interpolates: every value in play is either written
/// down by the user, 0, 1, or a grid point k/n. Only comparisons and
/// selections (min, max, residuation) are performed, so plain integer
/// numerator/denominator pairs stay exact forever.
class Value {
public:
  Value() : num_(0), den_(1) {}

  Value(std::int64_t num, std::int64_t den) {
    if (den == 0)
      throw std::invalid_argument("Value: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num < 0 || num > den)
      throw std::invalid_argument("Value: outside [0,1]");
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static Value zero() { return Value(); }
  static Value one() { return Value(1, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  friend bool operator==(const Value& a, const Value& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    // Cross products of canonical forms; 128-bit keeps huge inputs exact.
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Renders as "0", "1" or "p/q".
  std::string str() const {
    if (num_ == 0) return "0";
    if (num_ == den_) return "1";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p/q", "0", "1" (and any integer ratio inside [0,1]).
  static std::optional<Value> parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::optional<std::int64_t> {
      if (s.empty() || s.size() > 18) return std::nullopt;
      std::int64_t v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
      }
      return v;
    };
    const auto slash = text.find('/');
    std::optional<std::int64_t> num, den;
    if (slash == std::string_view::npos) {
      num = parse_int(text);
      den = 1;
    } else {
      num = parse_int(text.substr(0, slash));
      den = parse_int(text.substr(slash + 1));
    }
    if (!num || !den || *den == 0 || *num > *den) return std::nullopt;
    return Value(*num, *den);
  }

private:
  std::int64_t num_;
  std::int64_t den_;
};

} // namespace gjl
